#pragma once

#include <functional>
#include <vector>

namespace signalcast::detail {

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SimplexOptions {
  double tolerance = 1e-10;  ///< (f_worst - f_best) <= tolerance * |f_best|
  int max_iterations = 5000;
  double step = 0.1;
};

/// Nelder-Mead with the standard coefficients (1, 2, 0.5, 0.5). Non-finite
/// objective values are treated as worse than any finite value.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                          const SimplexOptions& options);

}  // namespace signalcast::detail

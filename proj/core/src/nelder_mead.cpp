#include "nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace signalcast::detail {
namespace {

double sanitize(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::max(); }

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                          const SimplexOptions& options) {
  const std::size_t n = start.size();
  SimplexResult out;
  if (n == 0) {
    out.x = start;
    out.value = sanitize(f(start));
    out.converged = true;
    return out;
  }

  std::vector<std::vector<double>> pts(n + 1, start);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = std::abs(start[i]) > 1e-8 ? options.step * std::max(1.0, std::abs(start[i])) : options.step;
    pts[i + 1][i] += h;
  }
  for (std::size_t i = 0; i <= n; ++i) vals[i] = sanitize(f(pts[i]));

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    const double spread = vals[worst] - vals[best];
    if (spread <= options.tolerance * std::max(std::abs(vals[best]), std::numeric_limits<double>::min())) {
      out.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);
    }
    auto along = [&](double t, std::vector<double>& dst) {
      for (std::size_t j = 0; j < n; ++j) dst[j] = centroid[j] + t * (pts[worst][j] - centroid[j]);
      return sanitize(f(dst));
    };

    const double fr = along(-1.0, trial);
    if (fr < vals[best]) {
      const double fe = along(-2.0, trial2);
      if (fe < fr) {
        pts[worst] = trial2;
        vals[worst] = fe;
      } else {
        pts[worst] = trial;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = trial;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const double fc = along(outside ? -0.5 : 0.5, trial2);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = trial2;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
      vals[i] = sanitize(f(pts[i]));
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  out.x = pts[best];
  out.value = vals[best];
  out.iterations = it;
  return out;
}

}  // namespace signalcast::detail

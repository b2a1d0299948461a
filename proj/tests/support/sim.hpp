#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace sim {

/// Deterministic pseudo-noise shared with the offline oracle scripts.
inline std::vector<double> chirp(int n, double a, double b) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) out[static_cast<std::size_t>(t)] = std::sin(a * t * t + b * t);
  return out;
}

inline std::vector<double> white(std::mt19937_64& rng, int n, double sd = 1.0) {
  std::normal_distribution<double> z(0.0, sd);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = z(rng);
  return out;
}

inline std::vector<double> cumsum(std::vector<double> x) {
  for (std::size_t i = 1; i < x.size(); ++i) x[i] += x[i - 1];
  return x;
}

/// ARMA(1,1) with burn-in: y_t = phi y_{t-1} + e_t + theta e_{t-1}.
inline std::vector<double> arma11(std::mt19937_64& rng, int n, double phi, double theta, int burn = 200) {
  const auto e = white(rng, n + burn);
  std::vector<double> y(e.size(), 0.0);
  for (std::size_t t = 1; t < e.size(); ++t) y[t] = phi * y[t - 1] + e[t] + theta * e[t - 1];
  return {y.begin() + burn, y.end()};
}

inline std::vector<double> ar1(std::mt19937_64& rng, int n, double phi, int burn = 200) {
  return arma11(rng, n, phi, 0.0, burn);
}

}  // namespace sim

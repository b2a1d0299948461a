#include "signalcast/arima.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/distributions/normal.hpp>
#include <nlohmann/json.hpp>

#include "nelder_mead.hpp"
#include "signalcast/csv.hpp"
#include "signalcast/error.hpp"
#include "signalcast/linalg.hpp"
#include "signalcast/parallel.hpp"
#include "signalcast/series.hpp"

namespace signalcast::arima {
namespace {

/// Roots of z^q + m_1 z^{q-1} + ... + m_q; these are the reciprocals of the
/// roots of 1 + m_1 z + ... + m_q z^q.
std::vector<std::complex<double>> reciprocal_roots(const std::vector<double>& ma) {
  const auto q = static_cast<Eigen::Index>(ma.size());
  if (q == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(q, q);
  for (Eigen::Index j = 0; j < q; ++j) companion(0, j) = -ma[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 1; i < q; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < q; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

bool invertible(const std::vector<double>& ma) {
  for (const auto& r : reciprocal_roots(ma)) {
    if (std::abs(r) >= 1.0) return false;
  }
  return true;
}

/// Reflects reciprocal roots outside the unit disk to 1/conj(r).
std::vector<double> reflect_ma(const std::vector<double>& ma) {
  auto roots = reciprocal_roots(ma);
  for (auto& r : roots) {
    const double m = std::abs(r);
    if (m >= 1.0) r = m == 1.0 ? r * 0.999 : 1.0 / std::conj(r);
  }
  // prod (z - r_i) = z^q + m_1 z^{q-1} + ...
  std::vector<std::complex<double>> poly{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= r * poly[i];
    }
    poly = std::move(next);
  }
  std::vector<double> out(ma.size());
  for (std::size_t j = 0; j < ma.size(); ++j) out[j] = poly[j + 1].real();
  return out;
}

struct Problem {
  std::vector<double> w;  // differenced series
  Eigen::MatrixXd exog;   // rows aligned with w
  int p = 0;
  int q = 0;
  bool intercept = true;

  int n() const { return static_cast<int>(w.size()); }
  int rows() const { return n() - p; }
  int linear_columns() const { return (intercept ? 1 : 0) + static_cast<int>(exog.cols()); }
};

struct Profile {
  double css = std::numeric_limits<double>::infinity();
  Eigen::VectorXd linear;  // intercept (if any) then exog coefficients
  Eigen::VectorXd residuals;
};

/// MA-filter in place: f_t = z_t - Σ ma_j f_{t-j}, zero presample.
void ma_filter(Eigen::Ref<Eigen::VectorXd> z, const std::vector<double>& ma) {
  const auto q = static_cast<Eigen::Index>(ma.size());
  for (Eigen::Index t = 0; t < z.size(); ++t) {
    double acc = z(t);
    for (Eigen::Index j = 1; j <= q && j <= t; ++j) acc -= ma[static_cast<std::size_t>(j - 1)] * z(t - j);
    z(t) = acc;
  }
}

/// CSS with the intercept and exog coefficients solved by least squares for
/// the given ARMA coefficients.
Profile profile(const Problem& pr, const std::vector<double>& ar, const std::vector<double>& ma) {
  const int rows = pr.rows();
  const int lin = pr.linear_columns();
  Eigen::VectorXd u(rows);
  for (int r = 0; r < rows; ++r) {
    const int t = r + pr.p;
    double v = pr.w[static_cast<std::size_t>(t)];
    for (int i = 1; i <= pr.p; ++i) v -= ar[static_cast<std::size_t>(i - 1)] * pr.w[static_cast<std::size_t>(t - i)];
    u(r) = v;
  }
  Eigen::MatrixXd z(rows, lin);
  if (lin > 0) {
    int col = 0;
    if (pr.intercept) z.col(col++).setOnes();
    if (pr.exog.cols() > 0) z.rightCols(pr.exog.cols()) = pr.exog.bottomRows(rows);
  }
  if (!ma.empty()) {
    ma_filter(u, ma);
    for (int c = 0; c < lin; ++c) ma_filter(z.col(c), ma);
  }
  Profile out;
  if (lin > 0) {
    const auto fit = ols(z, u);
    out.linear = fit.beta;
    out.residuals = fit.residuals;
    out.css = fit.ssr;
  } else {
    out.linear.resize(0);
    out.residuals = u;
    out.css = u.squaredNorm();
  }
  return out;
}

struct Start {
  std::vector<double> ar;
  std::vector<double> ma;
};

/// Hannan-Rissanen: long autoregression for innovation proxies, then one
/// regression on lagged series and lagged proxies.
Start hannan_rissanen(const Problem& pr) {
  Start s{std::vector<double>(static_cast<std::size_t>(pr.p), 0.0), std::vector<double>(static_cast<std::size_t>(pr.q), 0.0)};
  const int n = pr.n();
  const int lin = pr.linear_columns();
  const int long_order = std::max(pr.p + pr.q + 1, std::min(n / 4, static_cast<int>(std::ceil(10.0 * std::log10(n)))));
  try {
    std::vector<double> proxy(static_cast<std::size_t>(n), 0.0);
    if (pr.q > 0) {
      const int rows = n - long_order;
      if (rows <= long_order + lin + 5) return s;
      Eigen::MatrixXd x(rows, long_order + lin);
      Eigen::VectorXd y(rows);
      for (int r = 0; r < rows; ++r) {
        const int t = r + long_order;
        y(r) = pr.w[static_cast<std::size_t>(t)];
        for (int i = 1; i <= long_order; ++i) x(r, i - 1) = pr.w[static_cast<std::size_t>(t - i)];
        int col = long_order;
        if (pr.intercept) x(r, col++) = 1.0;
        for (Eigen::Index c = 0; c < pr.exog.cols(); ++c) x(r, col++) = pr.exog(t, c);
      }
      const auto fit = ols(x, y);
      for (int r = 0; r < rows; ++r) proxy[static_cast<std::size_t>(r + long_order)] = fit.residuals(r);
    }
    const int first = pr.q > 0 ? std::max(pr.p, long_order + pr.q) : pr.p;
    const int rows = n - first;
    const int cols = pr.p + pr.q + lin;
    if (rows <= cols + 2) return s;
    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd y(rows);
    for (int r = 0; r < rows; ++r) {
      const int t = r + first;
      y(r) = pr.w[static_cast<std::size_t>(t)];
      for (int i = 1; i <= pr.p; ++i) x(r, i - 1) = pr.w[static_cast<std::size_t>(t - i)];
      for (int j = 1; j <= pr.q; ++j) x(r, pr.p + j - 1) = proxy[static_cast<std::size_t>(t - j)];
      int col = pr.p + pr.q;
      if (pr.intercept) x(r, col++) = 1.0;
      for (Eigen::Index c = 0; c < pr.exog.cols(); ++c) x(r, col++) = pr.exog(t, c);
    }
    const auto fit = ols(x, y);
    for (int i = 0; i < pr.p; ++i) s.ar[static_cast<std::size_t>(i)] = fit.beta(i);
    for (int j = 0; j < pr.q; ++j) s.ma[static_cast<std::size_t>(j)] = fit.beta(pr.p + j);
  } catch (const SingularMatrixError&) {
    // Fall back to the zero start; the linear part is still profiled exactly.
  }
  if (!invertible(s.ma)) s.ma = reflect_ma(s.ma);
  if (!invertible(s.ma)) std::fill(s.ma.begin(), s.ma.end(), 0.0);
  return s;
}

std::vector<double> concat(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void split(const std::vector<double>& theta, int p, std::vector<double>& ar, std::vector<double>& ma) {
  ar.assign(theta.begin(), theta.begin() + p);
  ma.assign(theta.begin() + p, theta.end());
}

std::string sig_label(double significance) {
  const double pct = significance * 100.0;
  std::ostringstream s;
  if (std::abs(pct - std::round(pct)) < 1e-9) {
    s << static_cast<long>(std::round(pct));
  } else {
    s << pct;
  }
  return s.str();
}

}  // namespace

bool ArimaSpec::valid(int max_order) const {
  if (p < 0 || d < 0 || q < 0) return false;
  if (p > max_order || d > max_order || q > max_order) return false;
  return p + q >= 1 || d >= 1;
}

std::string ArimaSpec::label() const {
  return "(" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(q) + ")";
}

InformationCriteria information_criteria(double loglik, int k, double n) {
  if (n < 1) throw ValidationError("information criteria: n must be at least 1");
  if (k < 0) throw ValidationError("information criteria: k must be non-negative");
  return {2.0 * k - 2.0 * loglik, std::log(n) * k - 2.0 * loglik};
}

int ArimaFit::parameter_count() const {
  return 1 + spec.p + spec.q + static_cast<int>(exog_coeffs.size()) + 1;
}

double ArimaFit::rmse() const {
  if (residuals.empty()) return 0.0;
  double s = 0.0;
  for (double e : residuals) s += e * e;
  return std::sqrt(s / static_cast<double>(residuals.size()));
}

ArimaFit fit_arima(const std::vector<double>& y, const ArimaSpec& spec, const Exog* exog, const FitOptions& options) {
  if (spec.p < 0 || spec.d < 0 || spec.q < 0) throw ValidationError("fit_arima: negative order in " + spec.label());
  const std::size_t n_exog = exog ? exog->columns() : 0;
  if (exog && static_cast<std::size_t>(exog->values.rows()) != y.size()) {
    throw ValidationError("fit_arima: exog has " + std::to_string(exog->values.rows()) + " rows, y has " +
                          std::to_string(y.size()));
  }
  if (exog && static_cast<std::size_t>(exog->values.cols()) != n_exog) {
    throw ValidationError("fit_arima: exog names and columns disagree");
  }
  const std::size_t needed = static_cast<std::size_t>(spec.d + std::max(spec.p, spec.q)) + n_exog + 10;
  if (y.size() <= needed) {
    throw ValidationError("fit_arima: " + std::to_string(y.size()) + " observations are too few for " + spec.label() +
                          " with " + std::to_string(n_exog) + " exogenous columns");
  }

  Problem pr;
  pr.w = series::difference(y, spec.d);
  pr.p = spec.p;
  pr.q = spec.q;
  pr.exog = exog ? Eigen::MatrixXd(exog->values.bottomRows(static_cast<Eigen::Index>(pr.w.size()))) : Eigen::MatrixXd(pr.w.size(), 0);

  ArimaFit fit;
  fit.spec = spec;
  fit.y = y;
  if (exog) {
    fit.exog_names = exog->names;
    fit.exog_values = exog->values;
  }

  std::vector<double> ar(static_cast<std::size_t>(spec.p), 0.0), ma(static_cast<std::size_t>(spec.q), 0.0);
  Profile best;
  if (spec.q == 0) {
    // Linear in every coefficient: one exact least-squares solve.
    const int rows = pr.rows();
    const int lin = pr.linear_columns();
    Eigen::MatrixXd x(rows, spec.p + lin);
    Eigen::VectorXd target(rows);
    for (int r = 0; r < rows; ++r) {
      const int t = r + spec.p;
      target(r) = pr.w[static_cast<std::size_t>(t)];
      for (int i = 1; i <= spec.p; ++i) x(r, i - 1) = pr.w[static_cast<std::size_t>(t - i)];
      int col = spec.p;
      if (pr.intercept) x(r, col++) = 1.0;
      for (Eigen::Index c = 0; c < pr.exog.cols(); ++c) x(r, col++) = pr.exog(t, c);
    }
    const auto sol = ols(x, target);
    for (int i = 0; i < spec.p; ++i) ar[static_cast<std::size_t>(i)] = sol.beta(i);
    best.css = sol.ssr;
    best.linear = sol.beta.tail(lin);
    best.residuals = sol.residuals;
    fit.iterations = 0;
    fit.converged = true;
  } else {
    const auto start = hannan_rissanen(pr);
    const auto objective = [&](const std::vector<double>& theta) {
      std::vector<double> a, m;
      split(theta, spec.p, a, m);
      if (!invertible(m)) return std::numeric_limits<double>::infinity();
      return profile(pr, a, m).css;
    };
    // A singular exog design fails here and propagates as SingularMatrixError.
    profile(pr, start.ar, start.ma);

    detail::SimplexOptions so;
    so.tolerance = options.tolerance;
    so.max_iterations = options.max_iterations;
    std::vector<double> theta = concat(start.ar, start.ma);
    auto result = detail::nelder_mead(objective, theta, so);
    int total_iterations = result.iterations;
    bool converged = result.converged;
    // Re-seed the simplex at the optimum until it stops improving.
    for (int cycle = 0; cycle < 3 && total_iterations < options.max_iterations; ++cycle) {
      so.max_iterations = options.max_iterations - total_iterations;
      so.step = 0.05;
      auto again = detail::nelder_mead(objective, result.x, so);
      total_iterations += again.iterations;
      converged = again.converged;
      const bool improved = again.value < result.value * (1.0 - 1e-12);
      if (again.value <= result.value) result = again;
      if (!improved) break;
    }
    if (options.restarts > 0) {
      std::mt19937_64 rng(options.seed);
      std::normal_distribution<double> jitter(0.0, 0.1);
      for (int r = 0; r < options.restarts; ++r) {
        auto x0 = result.x;
        for (auto& v : x0) v += jitter(rng);
        so.max_iterations = options.max_iterations;
        so.step = 0.1;
        const auto trial = detail::nelder_mead(objective, x0, so);
        if (trial.value < result.value) result = trial;
      }
    }
    split(result.x, spec.p, ar, ma);
    if (!invertible(ma)) {
      ma = reflect_ma(ma);
      fit.ma_reflected = true;
    }
    best = profile(pr, ar, ma);
    fit.iterations = total_iterations;
    fit.converged = converged;
  }

  fit.ar = ar;
  fit.ma = ma;
  int idx = 0;
  if (pr.intercept) fit.intercept = best.linear(idx++);
  for (std::size_t c = 0; c < n_exog; ++c) fit.exog_coeffs.push_back(best.linear(idx++));
  fit.css = best.css;
  fit.n_effective = pr.rows();
  fit.residuals.assign(best.residuals.data(), best.residuals.data() + best.residuals.size());
  fit.sigma2 = fit.css / fit.n_effective;
  if (!(fit.sigma2 > 0.0) || !std::isfinite(fit.sigma2)) {
    throw NumericError("fit_arima: degenerate innovation variance for " + spec.label());
  }
  fit.loglik = -0.5 * fit.n_effective * (std::log(2.0 * M_PI * fit.sigma2) + 1.0);
  const auto ic = information_criteria(fit.loglik, fit.parameter_count(), fit.n_effective);
  fit.aic = ic.aic;
  fit.bic = ic.bic;
  return fit;
}

GridResult grid_search(const std::vector<double>& y, const Exog* exog, int p_min, int p_max, int d, int q_min,
                       int q_max, const FitOptions& options) {
  if (p_min > p_max || q_min > q_max || p_min < 0 || q_min < 0) throw ValidationError("grid_search: empty order range");
  std::vector<ArimaSpec> specs;
  for (int p = p_min; p <= p_max; ++p) {
    for (int q = q_min; q <= q_max; ++q) specs.push_back({p, d, q});
  }
  std::vector<std::optional<ArimaFit>> fits(specs.size());
  std::vector<std::string> errors(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    try {
      fits[i] = fit_arima(y, specs[i], exog, options);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  GridResult out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (fits[i] && std::isfinite(fits[i]->aic)) {
      out.ranked.push_back(std::move(*fits[i]));
    } else {
      out.failures.push_back({specs[i], errors[i].empty() ? "non-finite AIC" : errors[i]});
    }
  }
  if (out.ranked.empty()) throw NumericError("grid_search: every candidate failed to fit");
  std::stable_sort(out.ranked.begin(), out.ranked.end(), [](const ArimaFit& a, const ArimaFit& b) {
    if (a.aic != b.aic) return a.aic < b.aic;
    const int sa = a.spec.p + a.spec.q, sb = b.spec.p + b.spec.q;
    if (sa != sb) return sa < sb;
    return a.spec.p < b.spec.p;
  });
  return out;
}

double normal_critical(double significance) {
  if (!(significance > 0.0 && significance < 1.0)) throw ValidationError("significance must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal(), 1.0 - significance / 2.0);
}

std::vector<double> psi_weights(const ArimaFit& fit, int count) {
  // a(L) = (1 - Σ ar_i L^i)(1 - L)^d
  std::vector<double> a{1.0};
  for (double c : fit.ar) a.push_back(-c);
  for (int k = 0; k < fit.spec.d; ++k) {
    std::vector<double> next(a.size() + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      next[i] += a[i];
      next[i + 1] -= a[i];
    }
    a = std::move(next);
  }
  std::vector<double> psi(static_cast<std::size_t>(std::max(count, 0)), 0.0);
  for (int j = 0; j < count; ++j) {
    double v = j == 0 ? 1.0 : (j <= static_cast<int>(fit.ma.size()) ? fit.ma[static_cast<std::size_t>(j - 1)] : 0.0);
    for (int i = 1; i < static_cast<int>(a.size()) && i <= j; ++i) v -= a[static_cast<std::size_t>(i)] * psi[static_cast<std::size_t>(j - i)];
    psi[static_cast<std::size_t>(j)] = v;
  }
  return psi;
}

ForecastResult forecast(const ArimaFit& fit, int horizon, const std::vector<double>& significances,
                        const Exog* future_exog) {
  if (horizon <= 0) throw ValidationError("forecast: horizon must be positive");
  const bool has_exog = !fit.exog_coeffs.empty();
  if (has_exog != (future_exog != nullptr)) {
    throw ValidationError(has_exog ? "forecast: model has exogenous columns, future values required"
                                   : "forecast: model has no exogenous columns");
  }
  if (future_exog) {
    if (future_exog->values.rows() != horizon) {
      throw ValidationError("forecast: future exog has " + std::to_string(future_exog->values.rows()) +
                            " rows for horizon " + std::to_string(horizon));
    }
    if (static_cast<std::size_t>(future_exog->values.cols()) != fit.exog_coeffs.size()) {
      throw ValidationError("forecast: future exog column count differs from the fit");
    }
  }

  const auto w = series::difference(fit.y, fit.spec.d);
  const int n = static_cast<int>(w.size());
  // Innovations on the full differenced index, zero before the effective sample.
  std::vector<double> eps(static_cast<std::size_t>(n + horizon), 0.0);
  for (std::size_t i = 0; i < fit.residuals.size(); ++i) eps[static_cast<std::size_t>(fit.spec.p) + i] = fit.residuals[i];
  std::vector<double> ext = w;
  ext.resize(static_cast<std::size_t>(n + horizon), 0.0);

  ForecastResult out;
  out.horizon = horizon;
  for (int h = 0; h < horizon; ++h) {
    const int t = n + h;
    double v = fit.intercept;
    for (int i = 1; i <= fit.spec.p; ++i) v += fit.ar[static_cast<std::size_t>(i - 1)] * ext[static_cast<std::size_t>(t - i)];
    for (int j = 1; j <= fit.spec.q; ++j) {
      if (t - j >= 0) v += fit.ma[static_cast<std::size_t>(j - 1)] * eps[static_cast<std::size_t>(t - j)];
    }
    for (std::size_t c = 0; c < fit.exog_coeffs.size(); ++c) v += fit.exog_coeffs[c] * future_exog->values(h, static_cast<Eigen::Index>(c));
    ext[static_cast<std::size_t>(t)] = v;
    out.point_differenced.push_back(v);
  }

  // Integrate back: level k forecast = last Δ^k y + cumulative sum of level k+1.
  std::vector<double> level = out.point_differenced;
  for (int k = fit.spec.d - 1; k >= 0; --k) {
    const auto dk = series::difference(fit.y, k);
    double acc = dk.back();
    for (auto& v : level) {
      acc += v;
      v = acc;
    }
  }
  out.point = level;

  const auto psi = psi_weights(fit, horizon);
  double cum = 0.0;
  for (int h = 0; h < horizon; ++h) {
    cum += psi[static_cast<std::size_t>(h)] * psi[static_cast<std::size_t>(h)];
    out.se.push_back(std::sqrt(fit.sigma2 * cum));
  }
  for (double s : significances) {
    const double z = normal_critical(s);
    Band b;
    for (int h = 0; h < horizon; ++h) {
      b.lower.push_back(out.point[static_cast<std::size_t>(h)] - z * out.se[static_cast<std::size_t>(h)]);
      b.upper.push_back(out.point[static_cast<std::size_t>(h)] + z * out.se[static_cast<std::size_t>(h)]);
    }
    out.bounds[s] = std::move(b);
  }
  return out;
}

AcfResult sample_acf(const std::vector<double>& x, int max_lag) {
  if (max_lag < 0) throw ValidationError("acf: max_lag must be non-negative");
  if (x.size() <= static_cast<std::size_t>(max_lag)) {
    throw ValidationError("acf: " + std::to_string(x.size()) + " values are too few for max_lag " + std::to_string(max_lag));
  }
  AcfResult out;
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double c0 = 0.0;
  for (double v : x) c0 += (v - mean) * (v - mean);
  out.band = 1.96 / std::sqrt(n);
  out.acf.assign(static_cast<std::size_t>(max_lag) + 1, 0.0);
  out.acf[0] = 1.0;
  if (c0 <= 0.0) {
    out.warnings.push_back("zero-variance series: autocorrelations beyond lag 0 set to 0");
    return out;
  }
  for (int k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (std::size_t t = 0; t + static_cast<std::size_t>(k) < x.size(); ++t) {
      ck += (x[t] - mean) * (x[t + static_cast<std::size_t>(k)] - mean);
    }
    out.acf[static_cast<std::size_t>(k)] = ck / c0;
    if (std::abs(ck / c0) > out.band) out.flagged.push_back(k);
  }
  return out;
}

AcfResult residual_acf(const ArimaFit& fit, int max_lag) { return sample_acf(fit.residuals, max_lag); }

std::string fit_report_json(const ArimaFit& fit) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["spec"] = {{"p", fit.spec.p}, {"d", fit.spec.d}, {"q", fit.spec.q}};
  j["model"] = fit.exog_coeffs.empty() ? "ARIMA" : "ARIMAX";
  j["coefficients"]["intercept"] = fit.intercept;
  j["coefficients"]["ar"] = fit.ar;
  j["coefficients"]["ma"] = fit.ma;
  nlohmann::json ex = nlohmann::json::object();
  for (std::size_t i = 0; i < fit.exog_coeffs.size(); ++i) ex[fit.exog_names[i]] = fit.exog_coeffs[i];
  j["coefficients"]["exog"] = ex;
  j["sigma2"] = fit.sigma2;
  j["loglik"] = fit.loglik;
  j["aic"] = fit.aic;
  j["bic"] = fit.bic;
  j["n_effective"] = fit.n_effective;
  j["rmse"] = fit.rmse();
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["ma_reflected"] = fit.ma_reflected;
  return j.dump(2);
}

void write_forecast_csv(std::ostream& out, const ForecastResult& fc, const std::vector<std::string>& dates) {
  if (dates.size() != static_cast<std::size_t>(fc.horizon)) throw ValidationError("forecast csv: date count mismatch");
  std::vector<double> levels;
  for (const auto& [s, b] : fc.bounds) levels.push_back(s);
  std::sort(levels.rbegin(), levels.rend());
  std::vector<std::string> row{"date", "point"};
  for (double s : levels) {
    row.push_back("lower_" + sig_label(s));
    row.push_back("upper_" + sig_label(s));
  }
  csv::write_row(out, row);
  auto num = [](double v) {
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
  };
  for (int h = 0; h < fc.horizon; ++h) {
    const auto hi = static_cast<std::size_t>(h);
    row.assign({dates[hi], num(fc.point[hi])});
    for (double s : levels) {
      row.push_back(num(fc.bounds.at(s).lower[hi]));
      row.push_back(num(fc.bounds.at(s).upper[hi]));
    }
    csv::write_row(out, row);
  }
}

}  // namespace signalcast::arima

#include "signalcast/stattests.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>

#include "signalcast/csv.hpp"
#include "signalcast/linalg.hpp"
#include "signalcast/parallel.hpp"
#include "signalcast/series.hpp"

namespace signalcast::stattests {
namespace {

// MacKinnon (1994) response surface, constant only, one series.
constexpr double kTauMax = 2.74;
constexpr double kTauMin = -18.83;
constexpr double kTauStar = -1.61;
constexpr double kSmallP[] = {2.1659, 1.4412, 3.8269e-2};
constexpr double kLargeP[] = {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2};

// MacKinnon (2010) Table 2, constant only, one series: 1%, 5%, 10%.
constexpr double kCrit[3][4] = {
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
};

bool is_constant(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

double gaussian_aic(double ssr, int nobs, int params) {
  const double n = nobs;
  const double llf = -n / 2.0 * (std::log(2.0 * M_PI) + std::log(ssr / n) + 1.0);
  return -2.0 * llf + 2.0 * params;
}

struct AdfDesign {
  Eigen::MatrixXd x;  // const, level, lagged differences
  Eigen::VectorXd y;
};

// Rows use differences from index `first_row` onwards so every lag up to
// `lags` is available.
AdfDesign adf_design(const std::vector<double>& level, const std::vector<double>& diff, int lags, int first_row) {
  const int rows = static_cast<int>(diff.size()) - first_row;
  AdfDesign d{Eigen::MatrixXd(rows, 2 + lags), Eigen::VectorXd(rows)};
  for (int r = 0; r < rows; ++r) {
    const int t = first_row + r;  // index into diff; diff[t] = level[t+1] - level[t]
    d.y(r) = diff[static_cast<std::size_t>(t)];
    d.x(r, 0) = 1.0;
    d.x(r, 1) = level[static_cast<std::size_t>(t)];
    for (int j = 1; j <= lags; ++j) d.x(r, 1 + j) = diff[static_cast<std::size_t>(t - j)];
  }
  return d;
}

std::string join_pvalues(const std::vector<double>& p) {
  std::ostringstream s;
  s.precision(12);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s << ';';
    s << p[i];
  }
  return s.str();
}

}  // namespace

double adf_pvalue_constant(double statistic) {
  if (statistic > kTauMax) return 1.0;
  if (statistic < kTauMin) return 0.0;
  double z = 0.0;
  if (statistic <= kTauStar) {
    z = kSmallP[0] + statistic * (kSmallP[1] + statistic * kSmallP[2]);
  } else {
    z = kLargeP[0] + statistic * (kLargeP[1] + statistic * (kLargeP[2] + statistic * kLargeP[3]));
  }
  return boost::math::cdf(boost::math::normal(), z);
}

AdfCriticalValues adf_critical_values_constant(int nobs) {
  const double inv = 1.0 / nobs;
  auto at = [&](int row) { return kCrit[row][0] + inv * (kCrit[row][1] + inv * (kCrit[row][2] + inv * kCrit[row][3])); };
  return {at(0), at(1), at(2)};
}

int default_adf_lag(std::size_t n) {
  const int rule = static_cast<int>(std::ceil(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
  const int cap_half = static_cast<int>(n) / 2 - 2;
  const int cap_rows = static_cast<int>(n) - 11;
  return std::max(0, std::min({rule, cap_half, cap_rows}));
}

AdfResult adf_test(const std::vector<double>& series, int max_lag, double alpha) {
  if (max_lag < 0) throw ValidationError("adf: max_lag must be non-negative");
  if (series.size() <= static_cast<std::size_t>(max_lag) + 10) {
    throw ValidationError("adf: series of length " + std::to_string(series.size()) + " is too short for max_lag " +
                          std::to_string(max_lag));
  }
  if (is_constant(series)) throw ValidationError("adf: constant series has zero variance");

  const auto diff = series::difference(series, 1);

  // Lag choice on the common sample that allows max_lag.
  int best_lag = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  {
    const auto full = adf_design(series, diff, max_lag, max_lag);
    for (int lag = 0; lag <= max_lag; ++lag) {
      const Eigen::MatrixXd x = full.x.leftCols(2 + lag);
      const auto fit = ols(x, full.y);
      const double aic = gaussian_aic(fit.ssr, static_cast<int>(x.rows()), static_cast<int>(x.cols()));
      if (aic < best_aic) {
        best_aic = aic;
        best_lag = lag;
      }
    }
  }

  const auto design = adf_design(series, diff, best_lag, best_lag);
  const auto fit = ols(design.x, design.y, true);
  AdfResult out;
  out.chosen_lag = best_lag;
  out.nobs = static_cast<int>(design.x.rows());
  out.statistic = fit.beta(1) / fit.standard_errors(1);
  if (!std::isfinite(out.statistic)) throw NumericError("adf: non-finite test statistic");
  out.p_value = adf_pvalue_constant(out.statistic);
  out.reject_h0 = out.p_value < alpha;
  out.critical = adf_critical_values_constant(out.nobs);
  return out;
}

StationaryResult ensure_stationary(const std::vector<double>& series, int max_d, double alpha, int max_lag) {
  if (max_d < 0) throw ValidationError("ensure_stationary: max_d must be non-negative");
  StationaryResult out;
  for (int d = 0; d <= max_d; ++d) {
    auto s = series::difference(series, d);
    const int lag = max_lag >= 0 ? max_lag : default_adf_lag(s.size());
    out.adf = adf_test(s, lag, alpha);
    out.d = d;
    if (out.adf.reject_h0) {
      out.series = std::move(s);
      return out;
    }
  }
  throw NotStationary("series still has a unit root after " + std::to_string(max_d) + " differences (p=" +
                          std::to_string(out.adf.p_value) + ")",
                      out.adf);
}

GrangerResult granger_test(const std::vector<double>& x, const std::vector<double>& y, int max_lag, double alpha) {
  if (x.size() != y.size()) throw ValidationError("granger: x and y differ in length");
  if (max_lag < 1) throw ValidationError("granger: max_lag must be at least 1");
  const int n = static_cast<int>(y.size());
  if (n - max_lag - (2 * max_lag + 1) < 1) {
    throw ValidationError("granger: " + std::to_string(n) + " observations are too few for max_lag " +
                          std::to_string(max_lag));
  }

  GrangerResult out;
  for (int lag = 1; lag <= max_lag; ++lag) {
    const int rows = n - lag;
    Eigen::MatrixXd xu(rows, 1 + 2 * lag);
    Eigen::VectorXd target(rows);
    for (int r = 0; r < rows; ++r) {
      const int t = r + lag;
      target(r) = y[static_cast<std::size_t>(t)];
      xu(r, 0) = 1.0;
      for (int j = 1; j <= lag; ++j) {
        xu(r, j) = y[static_cast<std::size_t>(t - j)];
        xu(r, lag + j) = x[static_cast<std::size_t>(t - j)];
      }
    }
    GrangerLag g;
    g.lag = lag;
    try {
      const auto restricted = ols(xu.leftCols(1 + lag), target);
      const auto unrestricted = ols(xu, target);
      g.ssr_restricted = restricted.ssr;
      g.ssr_unrestricted = unrestricted.ssr;
      g.df_num = lag;
      g.df_den = unrestricted.df_resid;
    } catch (const SingularMatrixError& e) {
      throw SingularMatrixError("granger: collinear regressors at lag " + std::to_string(lag) + " (" + e.what() + ")",
                                e.condition());
    }
    // Nested fits: the restricted SSR can only sit below the unrestricted one by rounding.
    const double gain = std::max(0.0, g.ssr_restricted - g.ssr_unrestricted);
    if (g.ssr_unrestricted <= std::numeric_limits<double>::min() * 1e10 ||
        g.ssr_unrestricted <= 1e-14 * g.ssr_restricted) {
      g.f_statistic = gain > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      g.p_value = gain > 0.0 ? 0.0 : 1.0;
    } else {
      g.f_statistic = (gain / lag) / (g.ssr_unrestricted / g.df_den);
      const boost::math::fisher_f dist(g.df_num, g.df_den);
      g.p_value = boost::math::cdf(boost::math::complement(dist, g.f_statistic));
    }
    if (g.p_value < alpha) ++out.significant_count;
    out.per_lag.push_back(g);
  }
  return out;
}

FeatureRanking select_features(const std::vector<Component>& components, const std::vector<double>& y,
                               const FeatureSelectionOptions& options) {
  for (const auto& c : components) {
    if (c.values.size() != y.size()) throw ValidationError("component " + c.name + " does not cover y's dates");
  }
  const auto ys = ensure_stationary(y, options.max_d, options.alpha);

  FeatureRanking out;
  out.y_d = ys.d;
  std::vector<std::optional<RankedFeature>> tested(components.size());
  std::vector<std::string> reasons(components.size());
  parallel_for(components.size(), [&](std::size_t i) {
    const auto& c = components[i];
    try {
      if (is_constant(c.values)) {
        reasons[i] = "constant series";
        return;
      }
      const auto xs = ensure_stationary(c.values, options.max_d, options.alpha);
      const std::size_t m = std::min(xs.series.size(), ys.series.size());
      const std::vector<double> x_al(xs.series.end() - static_cast<std::ptrdiff_t>(m), xs.series.end());
      const std::vector<double> y_al(ys.series.end() - static_cast<std::ptrdiff_t>(m), ys.series.end());
      const auto g = granger_test(x_al, y_al, options.max_lag, options.alpha);
      RankedFeature f{i, c.name, c.topic, c.sentiment, xs.d, g.significant_count, {}};
      for (const auto& l : g.per_lag) f.p_values.push_back(l.p_value);
      tested[i] = std::move(f);
    } catch (const std::exception& e) {
      reasons[i] = e.what();
    }
  });

  for (std::size_t i = 0; i < components.size(); ++i) {
    if (tested[i]) {
      out.all.push_back(std::move(*tested[i]));
    } else {
      out.skipped.push_back({i, components[i].name, reasons[i]});
    }
  }
  std::stable_sort(out.all.begin(), out.all.end(), [](const RankedFeature& a, const RankedFeature& b) {
    return a.significant_count != b.significant_count ? a.significant_count > b.significant_count : a.index < b.index;
  });
  for (const auto& f : out.all) {
    if (f.significant_count >= options.min_count) out.ranked.push_back(f);
  }
  return out;
}

void write_ranking(std::ostream& out, const std::vector<RankedFeature>& ranking) {
  csv::write_row(out, {"component", "topic", "sentiment", "significant_count", "p_values"});
  for (const auto& f : ranking) {
    csv::write_row(out, {f.name, std::to_string(f.topic), std::to_string(f.sentiment),
                         std::to_string(f.significant_count), join_pvalues(f.p_values)});
  }
}

}  // namespace signalcast::stattests

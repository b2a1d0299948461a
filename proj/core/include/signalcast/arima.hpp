#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace signalcast::arima {

struct ArimaSpec {
  int p = 0;
  int d = 0;
  int q = 0;

  /// p+q >= 1 unless d >= 1; every order non-negative and within max_order.
  bool valid(int max_order = 30) const;
  std::string label() const;  ///< "(p,d,q)"
  friend bool operator==(const ArimaSpec&, const ArimaSpec&) = default;
};

/// Exogenous regressors, one row per observation of y.
struct Exog {
  std::vector<std::string> names;
  Eigen::MatrixXd values;

  std::size_t columns() const { return names.size(); }
  bool empty() const { return names.empty(); }
};

struct InformationCriteria {
  double aic = 0.0;
  double bic = 0.0;
};

/// aic = 2k - 2 loglik, bic = ln(n) k - 2 loglik.
InformationCriteria information_criteria(double loglik, int k, double n);

struct ArimaFit {
  ArimaSpec spec;
  double intercept = 0.0;
  std::vector<double> ar;  ///< coefficients on lagged differenced y
  std::vector<double> ma;  ///< coefficients on lagged innovations
  std::vector<std::string> exog_names;
  std::vector<double> exog_coeffs;
  double sigma2 = 0.0;
  double css = 0.0;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  int n_effective = 0;
  std::vector<double> residuals;  ///< length n_effective
  bool converged = true;
  int iterations = 0;
  bool ma_reflected = false;

  std::vector<double> y;        ///< training levels, kept for forecasting
  Eigen::MatrixXd exog_values;  ///< training exog rows

  int parameter_count() const;  ///< intercept + p + q + |exog| + sigma2
  /// Root-mean-square of in-sample one-step residuals.
  double rmse() const;
};

struct FitOptions {
  double tolerance = 1e-10;  ///< relative CSS spread across the simplex
  int max_iterations = 5000;
  int restarts = 0;  ///< extra jittered simplex restarts
  std::uint64_t seed = 0;
};

/// Conditional-sum-of-squares estimate of an ARIMA(X) model:
///   Δ^d y_t = c + Σ ar_i Δ^d y_{t-i} + Σ ma_j ε_{t-j} + Σ β_k x_{k,t} + ε_t.
/// Exogenous columns enter undifferenced. Presample innovations are zero and
/// the sample starts at the p-th differenced observation. The intercept and
/// exog coefficients are profiled out by least squares for each trial of the
/// ARMA coefficients, which a Nelder-Mead simplex searches from a
/// Hannan-Rissanen start.
ArimaFit fit_arima(const std::vector<double>& y, const ArimaSpec& spec, const Exog* exog = nullptr,
                   const FitOptions& options = {});

struct GridFailure {
  ArimaSpec spec;
  std::string reason;
};

struct GridResult {
  std::vector<ArimaFit> ranked;  ///< aic ascending, then p+q, then p
  std::vector<GridFailure> failures;
};

/// Fits every (p, d, q) combination. Throws NumericError when every fit fails.
GridResult grid_search(const std::vector<double>& y, const Exog* exog, int p_min, int p_max, int d, int q_min,
                       int q_max, const FitOptions& options = {});

struct Band {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct ForecastResult {
  int horizon = 0;
  std::vector<double> point;
  std::vector<double> se;
  std::map<double, Band> bounds;  ///< keyed by significance level
  std::vector<double> point_differenced;  ///< forecasts of Δ^d y
};

/// Two-sided normal quantile z_{1-α/2}.
double normal_critical(double significance);

/// psi weights of the ARIMA model with the differencing folded into the AR
/// polynomial; psi[0] = 1.
std::vector<double> psi_weights(const ArimaFit& fit, int count);

/// Iterates the model forward with zero future innovations and integrates
/// back to levels. se_h = sigma * sqrt(Σ_{j<h} psi_j^2).
ForecastResult forecast(const ArimaFit& fit, int horizon, const std::vector<double>& significances = {0.05, 0.01},
                        const Exog* future_exog = nullptr);

struct AcfResult {
  std::vector<double> acf;  ///< lags 0..max_lag
  double band = 0.0;        ///< 1.96 / sqrt(n)
  std::vector<int> flagged;
  std::vector<std::string> warnings;
};

AcfResult sample_acf(const std::vector<double>& x, int max_lag);
AcfResult residual_acf(const ArimaFit& fit, int max_lag);

/// Report with spec, coefficients, criteria, sigma2 and convergence flag.
std::string fit_report_json(const ArimaFit& fit);

/// CSV: date,point,lower_5,upper_5,lower_1,upper_1 (one pair per significance).
void write_forecast_csv(std::ostream& out, const ForecastResult& fc, const std::vector<std::string>& dates);

}  // namespace signalcast::arima

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace signalcast::var {

struct VarFit {
  int p = 0;
  Eigen::VectorXd intercept;           ///< n
  std::vector<Eigen::MatrixXd> coeff;  ///< p matrices, n x n; coeff[j] multiplies y_{t-j-1}
  Eigen::MatrixXd resid_cov;           ///< ML estimate, residual cross-moment / (T - p)
  Eigen::MatrixXd residuals;           ///< (T - p) x n
  double loglik = 0.0;
  double aic = 0.0;          ///< -2 loglik + 2 (n + p n^2)
  double aic_per_obs = 0.0;  ///< log|Σ| + 2 (n + p n^2) / (T - p)
  int nobs = 0;
  std::vector<std::string> variable_names;

  int variables() const { return static_cast<int>(intercept.size()); }
  int parameter_count() const { return variables() + p * variables() * variables(); }
};

/// Equation-by-equation least squares on [1, y_{t-1}, ..., y_{t-p}].
/// p <= 0 fits the intercept-only model. Throws ValidationError for a
/// constant column or too few rows and SingularMatrixError for a singular
/// regressor matrix.
VarFit fit_var(const Eigen::MatrixXd& y, int p, std::vector<std::string> names = {});

struct OrderSelection {
  VarFit best;                               ///< refitted on the full sample
  std::vector<std::pair<int, double>> table;  ///< p -> aic on the common sample
  std::vector<std::pair<int, double>> table_per_obs;
};

/// AIC over p = 0..p_max on the shared sample rows p_max..T-1; ties go to the
/// smaller p.
OrderSelection select_var_order(const Eigen::MatrixXd& y, int p_max = 20, std::vector<std::string> names = {});

/// last_obs holds the most recent p rows, oldest first. Returns horizon x n.
Eigen::MatrixXd forecast_var(const VarFit& fit, const Eigen::MatrixXd& last_obs, int horizon = 7);

/// Mean implied by the fitted coefficients, (I - Σ Θ_j)^{-1} c.
Eigen::VectorXd unconditional_mean(const VarFit& fit);

std::string fit_report_json(const VarFit& fit);

}  // namespace signalcast::var

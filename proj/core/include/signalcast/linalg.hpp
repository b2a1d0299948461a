#pragma once

#include <Eigen/Dense>

namespace signalcast {

/// Condition estimates above this are treated as singular.
inline constexpr double kSingularCondition = 1e12;

struct OlsResult {
  Eigen::VectorXd beta;
  Eigen::VectorXd residuals;
  double ssr = 0.0;
  double condition = 1.0;  ///< |R(0,0)| / |R(k-1,k-1)| of the pivoted QR
  int df_resid = 0;

  /// Classical standard errors, sqrt(ssr/df * diag((X'X)^-1)).
  Eigen::VectorXd standard_errors;
};

/// Least squares via column-pivoted Householder QR. Throws
/// SingularMatrixError when the condition estimate exceeds
/// kSingularCondition or the design is rank deficient.
OlsResult ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, bool with_standard_errors = false);

/// Multi-response least squares sharing one design matrix.
struct MultiOlsResult {
  Eigen::MatrixXd beta;       ///< k x m
  Eigen::MatrixXd residuals;  ///< n x m
  double condition = 1.0;
};

MultiOlsResult ols_multi(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

}  // namespace signalcast

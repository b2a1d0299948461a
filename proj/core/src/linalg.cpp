#include "signalcast/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "signalcast/error.hpp"

namespace signalcast {
namespace {

double condition_of(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr, Eigen::Index cols) {
  if (cols == 0) return 1.0;
  const auto& r = qr.matrixR();
  const double first = std::abs(r(0, 0));
  const double last = std::abs(r(cols - 1, cols - 1));
  if (first == 0.0 || last == 0.0) return std::numeric_limits<double>::infinity();
  return first / last;
}

Eigen::ColPivHouseholderQR<Eigen::MatrixXd> checked_qr(const Eigen::MatrixXd& x, double& condition) {
  if (x.rows() < x.cols()) {
    throw SingularMatrixError("least squares: " + std::to_string(x.rows()) + " rows for " +
                                  std::to_string(x.cols()) + " regressors",
                              std::numeric_limits<double>::infinity());
  }
  if (!x.allFinite()) throw NumericError("least squares: non-finite regressor");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  condition = condition_of(qr, x.cols());
  if (!(condition <= kSingularCondition)) {
    throw SingularMatrixError("least squares: singular design (condition estimate " + std::to_string(condition) + ")",
                              condition);
  }
  return qr;
}

}  // namespace

OlsResult ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, bool with_standard_errors) {
  OlsResult out;
  const auto qr = checked_qr(x, out.condition);
  out.beta = qr.solve(y);
  out.residuals = y - x * out.beta;
  out.ssr = out.residuals.squaredNorm();
  out.df_resid = static_cast<int>(x.rows() - x.cols());
  if (with_standard_errors) {
    const Eigen::Index k = x.cols();
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd xtx_inv_perm = r_inv * r_inv.transpose();
    const auto& perm = qr.colsPermutation();
    const Eigen::MatrixXd xtx_inv = perm * xtx_inv_perm * perm.transpose();
    const double s2 = out.df_resid > 0 ? out.ssr / out.df_resid : std::numeric_limits<double>::quiet_NaN();
    out.standard_errors = (s2 * xtx_inv.diagonal()).cwiseSqrt();
  }
  return out;
}

MultiOlsResult ols_multi(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  MultiOlsResult out;
  const auto qr = checked_qr(x, out.condition);
  out.beta = qr.solve(y);
  out.residuals = y - x * out.beta;
  return out;
}

}  // namespace signalcast

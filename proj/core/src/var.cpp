#include "signalcast/var.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "signalcast/error.hpp"
#include "signalcast/linalg.hpp"
#include "signalcast/parallel.hpp"

namespace signalcast::var {
namespace {

std::vector<std::string> default_names(std::vector<std::string> names, Eigen::Index n) {
  if (names.empty()) {
    for (Eigen::Index i = 0; i < n; ++i) names.push_back("y" + std::to_string(i));
  }
  if (static_cast<Eigen::Index>(names.size()) != n) throw ValidationError("var: name count differs from column count");
  return names;
}

}  // namespace

VarFit fit_var(const Eigen::MatrixXd& y, int p, std::vector<std::string> names) {
  p = std::max(p, 0);
  const Eigen::Index t_total = y.rows();
  const Eigen::Index n = y.cols();
  if (n < 1) throw ValidationError("fit_var: no variables");
  if (t_total <= n * p + 1) {
    throw ValidationError("fit_var: " + std::to_string(t_total) + " rows are too few for VAR(" + std::to_string(p) +
                          ") in " + std::to_string(n) + " variables");
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    if ((y.col(c).array() == y(0, c)).all()) {
      throw ValidationError("fit_var: column " + std::to_string(c) + " has zero variance");
    }
  }

  const Eigen::Index rows = t_total - p;
  Eigen::MatrixXd x(rows, 1 + n * p);
  x.col(0).setOnes();
  for (int j = 1; j <= p; ++j) x.middleCols(1 + (j - 1) * n, n) = y.middleRows(p - j, rows);
  const Eigen::MatrixXd target = y.bottomRows(rows);

  const auto sol = ols_multi(x, target);
  VarFit fit;
  fit.p = p;
  fit.variable_names = default_names(std::move(names), n);
  fit.intercept = sol.beta.row(0).transpose();
  for (int j = 0; j < p; ++j) fit.coeff.push_back(sol.beta.middleRows(1 + j * n, n).transpose());
  fit.residuals = sol.residuals;
  fit.nobs = static_cast<int>(rows);
  fit.resid_cov = (sol.residuals.transpose() * sol.residuals) / static_cast<double>(rows);
  fit.resid_cov = 0.5 * (fit.resid_cov + fit.resid_cov.transpose());

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(fit.resid_cov);
  const Eigen::VectorXd dvec = ldlt.vectorD();
  if ((dvec.array() <= 0.0).any()) throw NumericError("fit_var: residual covariance is singular");
  const double logdet = dvec.array().log().sum();
  const double nn = static_cast<double>(n);
  const double r = static_cast<double>(rows);
  fit.loglik = -0.5 * r * (nn * std::log(2.0 * M_PI) + logdet + nn);
  fit.aic = -2.0 * fit.loglik + 2.0 * fit.parameter_count();
  fit.aic_per_obs = logdet + 2.0 * fit.parameter_count() / r;
  return fit;
}

OrderSelection select_var_order(const Eigen::MatrixXd& y, int p_max, std::vector<std::string> names) {
  if (p_max < 0) throw ValidationError("select_var_order: p_max must be non-negative");
  const Eigen::Index t_total = y.rows();
  if (t_total - p_max <= y.cols() * p_max + 1) {
    throw ValidationError("select_var_order: " + std::to_string(t_total) + " rows are too few for p_max " +
                          std::to_string(p_max));
  }
  const auto candidates = static_cast<std::size_t>(p_max) + 1;
  std::vector<double> aic(candidates), aic_obs(candidates);
  parallel_for(candidates, [&](std::size_t i) {
    const int p = static_cast<int>(i);
    const auto fit = fit_var(y.bottomRows(t_total - p_max + p), p, names);
    aic[i] = fit.aic;
    aic_obs[i] = fit.aic_per_obs;
  });

  OrderSelection out;
  int best = 0;
  for (std::size_t i = 0; i < candidates; ++i) {
    out.table.emplace_back(static_cast<int>(i), aic[i]);
    out.table_per_obs.emplace_back(static_cast<int>(i), aic_obs[i]);
    if (aic[i] < aic[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  out.best = fit_var(y, best, std::move(names));
  return out;
}

Eigen::MatrixXd forecast_var(const VarFit& fit, const Eigen::MatrixXd& last_obs, int horizon) {
  if (horizon <= 0) throw ValidationError("forecast_var: horizon must be positive");
  const int n = fit.variables();
  if (last_obs.rows() != fit.p || last_obs.cols() != n) {
    throw ValidationError("forecast_var: expected " + std::to_string(fit.p) + "x" + std::to_string(n) +
                          " recent observations");
  }
  Eigen::MatrixXd history(fit.p + horizon, n);
  if (fit.p > 0) history.topRows(fit.p) = last_obs;
  for (int h = 0; h < horizon; ++h) {
    const int t = fit.p + h;
    Eigen::VectorXd v = fit.intercept;
    for (int j = 1; j <= fit.p; ++j) v += fit.coeff[static_cast<std::size_t>(j - 1)] * history.row(t - j).transpose();
    history.row(t) = v.transpose();
  }
  return history.bottomRows(horizon);
}

Eigen::VectorXd unconditional_mean(const VarFit& fit) {
  const int n = fit.variables();
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (const auto& c : fit.coeff) a -= c;
  return a.fullPivLu().solve(fit.intercept);
}

std::string fit_report_json(const VarFit& fit) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["p"] = fit.p;
  j["variables"] = fit.variable_names;
  j["intercept"] = std::vector<double>(fit.intercept.data(), fit.intercept.data() + fit.intercept.size());
  auto matrix = [](const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      std::vector<double> row(static_cast<std::size_t>(m.cols()));
      for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
      rows.push_back(row);
    }
    return rows;
  };
  j["coeff"] = nlohmann::json::array();
  for (const auto& c : fit.coeff) j["coeff"].push_back(matrix(c));
  j["resid_cov"] = matrix(fit.resid_cov);
  j["loglik"] = fit.loglik;
  j["aic"] = fit.aic;
  j["aic_per_obs"] = fit.aic_per_obs;
  j["nobs"] = fit.nobs;
  return j.dump(2);
}

}  // namespace signalcast::var

#include <gtest/gtest.h>

#include <random>

#include "signalcast/arima.hpp"
#include "signalcast/error.hpp"
#include "signalcast/var.hpp"
#include "sim.hpp"

using namespace signalcast;
using namespace signalcast::var;

namespace {

// Three chirp series with cross-lag feedback; reference values from
// statsmodels 0.14 VAR(...).fit(2, trend="c").
Eigen::MatrixXd chirp_system() {
  const auto a = sim::chirp(250, 0.31, 0.05), b = sim::chirp(250, 0.47, 0.13), c = sim::chirp(250, 0.29, 0.41);
  Eigen::MatrixXd y(250, 3);
  for (int t = 0; t < 250; ++t) {
    const auto i = static_cast<std::size_t>(t);
    y(t, 0) = a[i];
    y(t, 1) = b[i];
    y(t, 2) = c[i];
  }
  for (int t = 1; t < 250; ++t) {
    y(t, 0) += 0.4 * y(t - 1, 0) + 0.2 * y(t - 1, 1);
    y(t, 1) += 0.3 * y(t - 1, 1) - 0.1 * y(t - 1, 2);
  }
  return y;
}

Eigen::MatrixXd simulate(const std::vector<Eigen::MatrixXd>& theta, const Eigen::VectorXd& c, int n,
                         std::mt19937_64& rng, int burn = 200) {
  const auto k = c.size();
  std::normal_distribution<double> z;
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n + burn, k);
  const int p = static_cast<int>(theta.size());
  for (int t = p; t < n + burn; ++t) {
    Eigen::VectorXd v = c;
    for (int j = 0; j < p; ++j) v += theta[static_cast<std::size_t>(j)] * y.row(t - j - 1).transpose();
    for (Eigen::Index i = 0; i < k; ++i) v(i) += z(rng);
    y.row(t) = v.transpose();
  }
  return y.bottomRows(n);
}

}  // namespace

TEST(FitVar, MatchesReferenceEstimates) {
  const auto fit = fit_var(chirp_system(), 2);
  const double c[] = {0.09619357997340035, 0.052285523101037665, 0.007368887459875184};
  const double a1[3][3] = {{0.37075348862999685, 0.18293769656813105, 0.0019881695986218397},
                           {0.009694518261897808, 0.31058237125476784, -0.05361694966388954},
                           {-0.05854440195177087, -0.10724051739924671, 0.006816968514228759}};
  const double sigma[3][3] = {{0.528061011498474, 0.04223362916739487, 0.01255094456886838},
                              {0.04223362916739487, 0.5286511513139384, -0.01819452412800498},
                              {0.01255094456886838, -0.01819452412800498, 0.49099581451469215}};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(fit.intercept(i), c[i], 1e-10);
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(fit.coeff[0](i, j), a1[i][j], 1e-10);
      EXPECT_NEAR(fit.resid_cov(i, j), sigma[i][j], 1e-10);
    }
  }
  EXPECT_NEAR(fit.loglik, -808.218715372956, 1e-7);
  EXPECT_NEAR(fit.aic_per_obs, -1.826383494607, 1e-9);
  EXPECT_NEAR(fit.aic, -2.0 * fit.loglik + 2.0 * (3 + 2 * 9), 1e-9);
  EXPECT_EQ(fit.nobs, 248);
  EXPECT_EQ(fit.residuals.rows(), 248);
}

TEST(SelectVarOrder, CommonSampleMatchesReference) {
  const auto sel = select_var_order(chirp_system(), 5);
  const double ref[] = {-1.6662356475962172, -1.8921307944077208, -1.8336765257814165,
                        -1.7866151509727748, -1.7346759795589153, -1.6920673720548522};
  ASSERT_EQ(sel.table_per_obs.size(), 6u);
  for (int p = 0; p <= 5; ++p) {
    EXPECT_EQ(sel.table_per_obs[static_cast<std::size_t>(p)].first, p);
    EXPECT_NEAR(sel.table_per_obs[static_cast<std::size_t>(p)].second, ref[p], 1e-9);
  }
  EXPECT_EQ(sel.best.p, 1);
  EXPECT_EQ(sel.best.nobs, 249);
}

TEST(FitVar, RecoversBivariateVar1) {
  std::mt19937_64 rng(1);
  Eigen::MatrixXd theta(2, 2);
  theta << 0.5, 0.1, 0.0, 0.3;
  const auto y = simulate({theta}, Eigen::Vector2d(1.0, -0.5), 5000, rng);
  const auto fit = fit_var(y, 1);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(fit.coeff[0](i, j), theta(i, j), 0.05);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fit.resid_cov);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-9);
  EXPECT_NEAR((fit.resid_cov - fit.resid_cov.transpose()).norm(), 0.0, 1e-12);
}

TEST(FitVar, InterceptOnlyIsColumnMeans) {
  std::mt19937_64 rng(2);
  Eigen::MatrixXd y = Eigen::MatrixXd::Random(50, 3);
  for (int p : {0, -2}) {
    const auto fit = fit_var(y, p);
    EXPECT_EQ(fit.p, 0);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(fit.intercept(i), y.col(i).mean(), 1e-14);
  }
}

TEST(FitVar, Errors) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Random(60, 2);
  Eigen::MatrixXd dup(60, 3);
  dup << y, y.col(0);
  EXPECT_THROW(fit_var(dup, 1), SingularMatrixError);
  Eigen::MatrixXd flat = y;
  flat.col(1).setConstant(3.0);
  EXPECT_THROW(fit_var(flat, 1), ValidationError);
  EXPECT_THROW(fit_var(y.topRows(4), 2), ValidationError);
}

TEST(ForecastVar, DiagonalRecursion) {
  VarFit fit;
  fit.p = 1;
  fit.intercept = Eigen::Vector2d::Zero();
  fit.coeff = {Eigen::Matrix2d{{0.5, 0.0}, {0.0, 0.5}}};
  Eigen::MatrixXd last(1, 2);
  last << 10, 4;
  const auto f = forecast_var(fit, last, 2);
  EXPECT_DOUBLE_EQ(f(0, 0), 5.0);
  EXPECT_DOUBLE_EQ(f(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(f(1, 0), 2.5);
  EXPECT_DOUBLE_EQ(f(1, 1), 1.0);
  EXPECT_THROW(forecast_var(fit, last, 0), ValidationError);
  EXPECT_THROW(forecast_var(fit, Eigen::MatrixXd::Zero(2, 2), 3), ValidationError);
}

TEST(ForecastVar, InterceptOnly) {
  VarFit fit;
  fit.p = 0;
  fit.intercept = Eigen::Vector3d(1, 2, 3);
  const auto f = forecast_var(fit, Eigen::MatrixXd(0, 3), 4);
  for (int h = 0; h < 4; ++h) EXPECT_EQ(f.row(h), fit.intercept.transpose());
}

TEST(ForecastVar, HandRolledRecursion) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  VarFit fit;
  fit.p = 2;
  fit.intercept = Eigen::Vector3d(u(rng), u(rng), u(rng));
  for (int j = 0; j < 2; ++j) {
    Eigen::MatrixXd m(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m(r, c) = u(rng);
    }
    fit.coeff.push_back(m);
  }
  Eigen::MatrixXd last(2, 3);
  last << 1.0, -2.0, 0.5, 3.0, 0.25, -1.0;
  const auto f = forecast_var(fit, last, 7);
  double hist[9][3] = {{1.0, -2.0, 0.5}, {3.0, 0.25, -1.0}};
  for (int h = 0; h < 7; ++h) {
    for (int i = 0; i < 3; ++i) {
      double v = fit.intercept(i);
      for (int j = 0; j < 3; ++j) v += fit.coeff[0](i, j) * hist[h + 1][j] + fit.coeff[1](i, j) * hist[h][j];
      hist[h + 2][i] = v;
      EXPECT_NEAR(f(h, i), v, 1e-10);
    }
  }
}

TEST(FitVar, UnivariateMatchesArimaCss) {
  std::mt19937_64 rng(4);
  const auto x = sim::arma11(rng, 600, 0.6, 0.0);
  Eigen::MatrixXd y = Eigen::Map<const Eigen::VectorXd>(x.data(), 600);
  const auto v = fit_var(y, 3);
  const auto a = arima::fit_arima(x, {3, 0, 0});
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(v.coeff[static_cast<std::size_t>(j)](0, 0), a.ar[static_cast<std::size_t>(j)], 1e-4);
}

TEST(ForecastVar, ConvergesToUnconditionalMean) {
  std::mt19937_64 rng(5);
  Eigen::MatrixXd t1(2, 2), t2(2, 2);
  t1 << 0.4, 0.1, -0.2, 0.3;
  t2 << 0.2, 0.0, 0.1, 0.1;
  const auto y = simulate({t1, t2}, Eigen::Vector2d(2.0, 1.0), 800, rng);
  const auto fit = fit_var(y, 2);
  const auto f = forecast_var(fit, y.bottomRows(2), 200);
  const auto mu = unconditional_mean(fit);
  EXPECT_NEAR(f(199, 0), mu(0), 1e-3);
  EXPECT_NEAR(f(199, 1), mu(1), 1e-3);
}

TEST(FitVar, CovariancePermutesWithVariables) {
  const auto y = chirp_system();
  Eigen::MatrixXd swapped(y.rows(), 3);
  swapped << y.col(2), y.col(0), y.col(1);
  const auto a = fit_var(y, 2), b = fit_var(swapped, 2);
  const int perm[] = {2, 0, 1};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(b.resid_cov(i, j), a.resid_cov(perm[i], perm[j]), 1e-12);
  }
}

TEST(SelectVarOrder, PmaxZeroIsInterceptOnly) {
  const auto sel = select_var_order(chirp_system(), 0);
  EXPECT_EQ(sel.best.p, 0);
  EXPECT_EQ(sel.table.size(), 1u);
}

TEST(Report, NamesVariables) {
  const auto fit = fit_var(chirp_system(), 1, {"cases", "a", "b"});
  const auto json = fit_report_json(fit);
  EXPECT_NE(json.find("\"cases\""), std::string::npos);
  EXPECT_NE(json.find("\"resid_cov\""), std::string::npos);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "signalcast/error.hpp"
#include "signalcast/eval.hpp"
#include "sim.hpp"

using namespace signalcast;
using namespace signalcast::eval;

namespace {

const std::vector<double> kCases{1119, 1321, 1355, 1257, 1225, 1467, 1648, 1741, 1670, 1536, 1466, 1696, 1725, 1870};
const std::vector<double> kBaseline5{1068, 1090, 1074, 1114, 1161, 1120, 1194, 1230, 1221, 1261, 1279, 1326, 1323, 1334};
const std::vector<double> kSocial1{1138, 1166, 1195, 1244, 1272, 1325, 1399, 1459, 1496, 1525, 1586, 1634, 1635, 1731};

series::CaseSeries series_of(std::vector<double> v) { return {*parse_date("2021-01-01"), std::move(v)}; }

}  // namespace

TEST(Metrics, BaselineColumn) {
  const auto m = metrics(kCases, kBaseline5);
  EXPECT_NEAR(m.rmse, 342.58, 0.5);
  ASSERT_TRUE(m.mape);
  EXPECT_NEAR(*m.mape, 19.36, 0.05);
  EXPECT_NEAR(m.r2, 0.67, 0.01);
  EXPECT_EQ(m.n, 14);
}

TEST(Metrics, SocialMediaColumn) {
  const auto m = metrics(kCases, kSocial1);
  EXPECT_NEAR(m.rmse, 143.76, 0.5);
  EXPECT_NEAR(*m.mape, 7.61, 0.05);
  EXPECT_NEAR(m.r2, 0.75, 0.01);
}

TEST(Metrics, ResidualFormAgainstDirectSum) {
  double mean = 0.0;
  for (double v : kCases) mean += v / 14.0;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < 14; ++i) {
    ss_res += (kCases[i] - kSocial1[i]) * (kCases[i] - kSocial1[i]);
    ss_tot += (kCases[i] - mean) * (kCases[i] - mean);
  }
  EXPECT_NEAR(metrics(kCases, kSocial1).r2_residual, 1.0 - ss_res / ss_tot, 1e-12);
}

TEST(Metrics, Identity) {
  const auto m = metrics(kCases, kCases);
  EXPECT_EQ(m.rmse, 0.0);
  EXPECT_EQ(*m.mape, 0.0);
  EXPECT_NEAR(m.r2, 1.0, 1e-12);
  EXPECT_EQ(m.r2_residual, 1.0);
}

TEST(Metrics, MeanPredictorScoresZero) {
  double mean = 0.0;
  for (double v : kCases) mean += v / 14.0;
  const auto m = metrics(kCases, std::vector<double>(14, mean));
  EXPECT_EQ(m.r2, 0.0);
  EXPECT_NEAR(m.r2_residual, 0.0, 1e-12);
}

TEST(Metrics, SignSymmetricRmse) {
  std::vector<double> up, down;
  for (std::size_t i = 0; i < 14; ++i) {
    const double e = static_cast<double>(i % 5) - 2.0;
    up.push_back(kCases[i] + e);
    down.push_back(kCases[i] - e);
  }
  EXPECT_DOUBLE_EQ(metrics(kCases, up).rmse, metrics(kCases, down).rmse);
}

TEST(Metrics, ZeroActualMakesMapeAbsent) {
  const auto m = metrics({0.0, 2.0}, {1.0, 2.0});
  EXPECT_FALSE(m.mape);
  EXPECT_FALSE(m.mape_reason.empty());
  EXPECT_NEAR(m.rmse, std::sqrt(0.5), 1e-15);
}

TEST(Metrics, Errors) {
  EXPECT_THROW(metrics({}, {}), ValidationError);
  EXPECT_THROW(metrics({1.0}, {1.0, 2.0}), ValidationError);
}

TEST(Backtest, SinglePointHorizon) {
  std::mt19937_64 rng(1);
  auto y = sim::cumsum(sim::white(rng, 120));
  const auto s = series_of(y);
  const auto r = backtest(s, nullptr, s.date(118), arima::ArimaSpec{1, 1, 0});
  ASSERT_EQ(r.forecast.horizon, 1);
  EXPECT_EQ(r.point_metrics.n, 1);
  EXPECT_NEAR(r.point_metrics.rmse, std::abs(y.back() - r.forecast.point[0]), 1e-12);
  EXPECT_EQ(r.upper_metrics.size(), 2u);
  EXPECT_NEAR(r.upper_metrics.at(0.05).rmse, std::abs(y.back() - r.forecast.bounds.at(0.05).upper[0]), 1e-12);
}

TEST(Backtest, BeatsNaiveOnArima110) {
  // Even the true model beats the naive path on only ~58% of single
  // 10-step paths, so compare the average error instead.
  double model_rmse = 0.0, naive_rmse = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(500 + seed);
    const auto e = sim::white(rng, 400);
    std::vector<double> dy(400, 0.0);
    for (std::size_t t = 1; t < 400; ++t) dy[t] = 0.7 * dy[t - 1] + e[t];
    const auto y = sim::cumsum(dy);
    const auto s = series_of(y);
    const auto r = backtest(s, nullptr, s.date(389), arima::ArimaSpec{1, 1, 0});
    std::vector<double> naive(10, y[389]);
    model_rmse += r.point_metrics.rmse / 50.0;
    naive_rmse += metrics(r.actual, naive).rmse / 50.0;
  }
  EXPECT_LT(model_rmse, 0.9 * naive_rmse);
}

TEST(Backtest, PoisonedTestSegmentLeavesFitUnchanged) {
  std::mt19937_64 rng(2);
  auto y = sim::cumsum(sim::arma11(rng, 200, 0.5, 0.3));
  const auto clean = series_of(y);
  for (std::size_t t = 190; t < 200; ++t) y[t] = 1e9 * (t % 2 ? 1 : -1);
  const auto poisoned = series_of(y);
  const auto a = backtest(clean, nullptr, clean.date(189), arima::ArimaSpec{1, 1, 1});
  const auto b = backtest(poisoned, nullptr, poisoned.date(189), arima::ArimaSpec{1, 1, 1});
  const auto& fa = std::get<arima::ArimaFit>(a.fit);
  const auto& fb = std::get<arima::ArimaFit>(b.fit);
  EXPECT_EQ(fa.ar, fb.ar);
  EXPECT_EQ(fa.ma, fb.ma);
  EXPECT_EQ(fa.intercept, fb.intercept);
  EXPECT_EQ(a.forecast.point, b.forecast.point);
}

TEST(Backtest, VarUsesExogAsVariables) {
  std::mt19937_64 rng(3);
  const int n = 220;
  const auto x = sim::white(rng, n);
  auto y = sim::white(rng, n);
  for (int t = 1; t < n; ++t) y[static_cast<std::size_t>(t)] += 0.5 * y[static_cast<std::size_t>(t - 1)] + 0.8 * x[static_cast<std::size_t>(t - 1)];
  const auto s = series_of(y);
  arima::Exog ex{{"x"}, Eigen::Map<const Eigen::VectorXd>(x.data(), n)};
  const auto r = backtest(s, &ex, s.date(n - 8), VarOrder{1});
  const auto& fit = std::get<var::VarFit>(r.fit);
  EXPECT_EQ(fit.variables(), 2);
  EXPECT_EQ(r.forecast.horizon, 7);
  EXPECT_EQ(r.test_dates.size(), 7u);
  EXPECT_TRUE(r.upper_metrics.empty());
}

TEST(Backtest, SplitMustBeInside) {
  const auto s = series_of(std::vector<double>(50, 1.0));
  EXPECT_THROW(backtest(s, nullptr, s.date(49), arima::ArimaSpec{0, 1, 0}), ValidationError);
  EXPECT_THROW(backtest(s, nullptr, s.start - std::chrono::days{1}, arima::ArimaSpec{0, 1, 0}), ValidationError);
}

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "signalcast/error.hpp"
#include "signalcast/stattests.hpp"
#include "sim.hpp"

using namespace signalcast;
using namespace signalcast::stattests;

namespace {

// ARMA(1,1)-shaped recursion over the chirp noise; reference values for these
// inputs come from statsmodels 0.14 adfuller / grangercausalitytests.
std::vector<double> ar_chirp() {
  const auto e = sim::chirp(300, 0.37, 0.11);
  std::vector<double> a(300);
  for (std::size_t t = 0; t < 300; ++t) a[t] = e[t] + (t ? 0.85 * a[t - 1] + 0.5 * e[t - 1] : 0.0);
  return a;
}

}  // namespace

TEST(Adf, PValueSurfaceMatchesReference) {
  EXPECT_NEAR(adf_pvalue_constant(-4.5), 0.00019663990033599, 1e-12);
  EXPECT_NEAR(adf_pvalue_constant(-3.0), 0.034894400275345, 1e-12);
  EXPECT_NEAR(adf_pvalue_constant(-2.0), 0.28657309916843, 1e-12);
  EXPECT_NEAR(adf_pvalue_constant(-1.0), 0.75326430120057, 1e-12);
  EXPECT_NEAR(adf_pvalue_constant(0.5), 0.98487309630655, 1e-12);
  EXPECT_EQ(adf_pvalue_constant(-30.0), 0.0);
  EXPECT_EQ(adf_pvalue_constant(5.0), 1.0);
}

TEST(Adf, CriticalValues) {
  const auto c = adf_critical_values_constant(100);
  EXPECT_NEAR(c.one, -3.49750103, 1e-7);
  EXPECT_NEAR(c.five, -2.89090644, 1e-7);
  EXPECT_NEAR(c.ten, -2.5824349, 1e-7);
  EXPECT_NEAR(adf_critical_values_constant(299).five, -2.8712554127251764, 1e-9);
}

TEST(Adf, MatchesReferenceWithLagSearch) {
  const auto a = ar_chirp();
  const auto r = adf_test(a, 8);
  EXPECT_EQ(r.chosen_lag, 3);
  EXPECT_EQ(r.nobs, 296);
  EXPECT_NEAR(r.statistic, -4.301485234335, 1e-8);
  EXPECT_NEAR(r.p_value, 0.000441588993, 1e-10);
  EXPECT_TRUE(r.reject_h0);

  std::vector<double> b(a.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) b[i] = 0.1 * (acc += a[i]);
  const auto rb = adf_test(b, 8);
  EXPECT_EQ(rb.chosen_lag, 4);
  EXPECT_NEAR(rb.statistic, -1.628898394085, 1e-8);
  EXPECT_NEAR(rb.p_value, 0.468067390358, 1e-9);
  EXPECT_FALSE(rb.reject_h0);
  EXPECT_EQ(rb.critical.five, adf_critical_values_constant(rb.nobs).five);
}

TEST(Adf, RandomWalkWithoutAugmentation) {
  const auto w = sim::cumsum(sim::chirp(300, 0.53, 0.29));
  const auto r = adf_test(w, 6);
  EXPECT_EQ(r.chosen_lag, 0);
  EXPECT_NEAR(r.statistic, -1.163833126109, 1e-8);
  EXPECT_NEAR(r.p_value, 0.688957172801, 1e-9);
}

TEST(Adf, ScaleInvariantStatistic) {
  const auto a = ar_chirp();
  auto scaled = a;
  for (auto& v : scaled) v *= 37.5;
  EXPECT_NEAR(adf_test(a, 5).statistic, adf_test(scaled, 5).statistic, 1e-8);
}

TEST(Adf, RejectionFlagFollowsAlpha) {
  const auto w = sim::cumsum(sim::chirp(300, 0.53, 0.29));
  const auto strict = adf_test(w, 6, 0.5);
  const auto loose = adf_test(w, 6, 0.7);
  EXPECT_FALSE(strict.reject_h0);
  EXPECT_TRUE(loose.reject_h0);
}

TEST(Adf, Errors) {
  EXPECT_THROW(adf_test(std::vector<double>(100, 3.0), 4), ValidationError);
  EXPECT_THROW(adf_test(sim::chirp(14, 0.3, 0.1), 4), ValidationError);
}

TEST(EnsureStationary, PicksFirstPassingOrder) {
  std::mt19937_64 rng(7);
  const auto noise = sim::white(rng, 400);
  EXPECT_EQ(ensure_stationary(noise).d, 0);
  const auto walk = sim::cumsum(noise);
  const auto one = ensure_stationary(walk);
  EXPECT_EQ(one.d, 1);
  EXPECT_EQ(one.series.size(), walk.size() - 1);
  int twice = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    std::mt19937_64 r(100 + s);
    twice += ensure_stationary(sim::cumsum(sim::cumsum(sim::white(r, 400)))).d == 2;
  }
  EXPECT_GE(twice, 18);
}

TEST(EnsureStationary, ThrowsWithLastResult) {
  std::mt19937_64 rng(3);
  const auto walk = sim::cumsum(sim::cumsum(sim::white(rng, 300)));
  try {
    ensure_stationary(walk, 0);
    FAIL() << "expected NotStationary";
  } catch (const NotStationary& e) {
    EXPECT_FALSE(e.last().reject_h0);
  }
}

TEST(Granger, MatchesReference) {
  const auto base = sim::chirp(200, 0.41, 0.07);
  const auto x = sim::chirp(200, 0.61, 0.23);
  auto y = base;
  for (std::size_t t = 2; t < 200; ++t) y[t] = 0.3 * y[t - 1] + 0.5 * x[t - 2] + base[t];
  const auto r = granger_test(x, y, 4);
  ASSERT_EQ(r.per_lag.size(), 4u);
  const double f[] = {0.072849730557, 26.487394526799, 19.622537831714, 14.955075095166};
  const double p[] = {0.78751584861123, 6.8444369720059e-11, 3.9966935416439e-11, 1.2694382932745e-10};
  const int dfd[] = {196, 193, 190, 187};
  for (int l = 0; l < 4; ++l) {
    EXPECT_EQ(r.per_lag[static_cast<std::size_t>(l)].lag, l + 1);
    EXPECT_NEAR(r.per_lag[static_cast<std::size_t>(l)].f_statistic, f[l], 1e-8);
    EXPECT_NEAR(r.per_lag[static_cast<std::size_t>(l)].p_value, p[l], 1e-6 * p[l] + 1e-12);
    EXPECT_EQ(r.per_lag[static_cast<std::size_t>(l)].df_den, dfd[l]);
    EXPECT_LE(r.per_lag[static_cast<std::size_t>(l)].ssr_unrestricted, r.per_lag[static_cast<std::size_t>(l)].ssr_restricted);
  }
  EXPECT_EQ(r.significant_count, 3);
}

TEST(Granger, AffineInvariance) {
  std::mt19937_64 rng(11);
  const auto x = sim::white(rng, 300);
  auto y = sim::white(rng, 300);
  for (std::size_t t = 1; t < 300; ++t) y[t] += 0.2 * x[t - 1];
  auto x2 = x, y2 = y;
  for (auto& v : x2) v = 3.0 * v - 7.0;
  for (auto& v : y2) v = 0.01 * v + 100.0;
  const auto a = granger_test(x, y, 6);
  const auto b = granger_test(x2, y2, 6);
  for (std::size_t l = 0; l < 6; ++l) {
    EXPECT_NEAR(a.per_lag[l].f_statistic, b.per_lag[l].f_statistic, 1e-8 * a.per_lag[l].f_statistic);
    EXPECT_GE(a.per_lag[l].f_statistic, 0.0);
  }
}

TEST(Granger, ShiftedCopyDoesNotCrash) {
  std::mt19937_64 rng(5);
  const auto y = sim::white(rng, 200);
  std::vector<double> x(y.begin() + 1, y.end());
  x.push_back(0.0);
  std::vector<double> ys(y.begin(), y.end());
  // x_t = y_{t+1}: x_{t-1} reproduces y_t exactly.
  try {
    const auto r = granger_test(x, ys, 3);
    for (const auto& l : r.per_lag) EXPECT_LT(l.p_value, 1e-6);
  } catch (const SingularMatrixError& e) {
    EXPECT_NE(std::string(e.what()).find("lag"), std::string::npos);
  }
}

TEST(Granger, ConstantRegressorNamesLag) {
  std::mt19937_64 rng(5);
  const auto y = sim::white(rng, 100);
  try {
    granger_test(std::vector<double>(100, 1.0), y, 2);
    FAIL() << "expected a singular design";
  } catch (const SingularMatrixError& e) {
    EXPECT_NE(std::string(e.what()).find("lag 1"), std::string::npos) << e.what();
  }
}

TEST(SelectFeatures, LeadingComponentRanksFirst) {
  std::mt19937_64 rng(19);
  const int n = 320;
  const auto y_full = sim::cumsum(sim::white(rng, n + 5));
  std::vector<double> y(y_full.begin(), y_full.begin() + n);
  std::vector<Component> comps;
  for (int c = 0; c < 4; ++c) comps.push_back({"noise" + std::to_string(c), c, 0, sim::white(rng, n)});
  Component lead{"lead", 4, 2, {}};
  for (int t = 0; t < n; ++t) lead.values.push_back(y_full[static_cast<std::size_t>(t + 5)] + 0.01 * sim::white(rng, 1)[0]);
  comps.push_back(lead);
  comps.push_back({"flat", 5, 1, std::vector<double>(n, 2.0)});
  const auto ranking = select_features(comps, y);
  ASSERT_FALSE(ranking.ranked.empty());
  EXPECT_EQ(ranking.ranked.front().name, "lead");
  EXPECT_GE(ranking.ranked.front().significant_count, 10);
  EXPECT_EQ(ranking.y_d, 1);
  ASSERT_EQ(ranking.skipped.size(), 1u);
  EXPECT_EQ(ranking.skipped[0].name, "flat");
  for (std::size_t i = 1; i < ranking.all.size(); ++i) {
    EXPECT_GE(ranking.all[i - 1].significant_count, ranking.all[i].significant_count);
  }

  std::ostringstream out;
  write_ranking(out, ranking.ranked);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "component,topic,sentiment,significant_count,p_values");
}

TEST(SelectFeatures, NoiseYieldsNothingAtTen) {
  std::mt19937_64 rng(23);
  const auto y = sim::white(rng, 250);
  std::vector<Component> comps;
  for (int c = 0; c < 6; ++c) comps.push_back({"c" + std::to_string(c), c, 0, sim::white(rng, 250)});
  EXPECT_TRUE(select_features(comps, y).ranked.empty());
}

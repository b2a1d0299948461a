#include <benchmark/benchmark.h>

#include <random>

#include "planted.hpp"
#include "signalcast/arima.hpp"
#include "signalcast/stattests.hpp"
#include "signalcast/topics.hpp"
#include "signalcast/var.hpp"
#include "sim.hpp"

using namespace signalcast;

static void BM_FitArima11(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto y = sim::arma11(rng, static_cast<int>(state.range(0)), 0.6, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(arima::fit_arima(y, {1, 0, 1}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitArima11)->Arg(200)->Arg(1000)->Arg(5000)->Complexity();

static void BM_GridSearch(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto y = sim::arma11(rng, 300, 0.6, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(arima::grid_search(y, nullptr, 0, 3, 0, 0, 3));
}
BENCHMARK(BM_GridSearch)->Unit(benchmark::kMillisecond);

static void BM_Granger14(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto x = sim::white(rng, static_cast<int>(state.range(0)), 1.0);
  const auto y = sim::white(rng, static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(stattests::granger_test(x, y, 14));
}
BENCHMARK(BM_Granger14)->Arg(200)->Arg(2000);

static void BM_Adf(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto x = sim::cumsum(sim::white(rng, static_cast<int>(state.range(0)), 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(stattests::adf_test(x, stattests::default_adf_lag(x.size())));
}
BENCHMARK(BM_Adf)->Arg(200)->Arg(2000);

static void BM_FitLda(benchmark::State& state) {
  const auto planted = sim::planted_corpus(4, 20, static_cast<int>(state.range(0)), 30, 5);
  const auto vb = topics::build_vocabulary(planted.docs, 1);
  topics::LdaOptions o;
  o.k = 4;
  o.iterations = 100;
  o.seed = 9;
  for (auto _ : state) benchmark::DoNotOptimize(topics::fit_lda(vb.corpus, vb.vocabulary, o));
  state.SetItemsProcessed(state.iterations() * vb.corpus.total_tokens() * o.iterations);
}
BENCHMARK(BM_FitLda)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_VarOrder(benchmark::State& state) {
  std::mt19937_64 rng(6);
  Eigen::MatrixXd y(500, 3);
  std::normal_distribution<double> z(0.0, 1.0);
  for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = z(rng);
  for (auto _ : state) benchmark::DoNotOptimize(var::select_var_order(y, 10));
}
BENCHMARK(BM_VarOrder)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

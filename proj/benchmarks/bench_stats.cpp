#include <benchmark/benchmark.h>

#include "hdwn/classical.hpp"
#include "hdwn/rng.hpp"
#include "hdwn/simulate.hpp"
#include "hdwn/stats.hpp"

namespace {

hdwn::Matrix panel(int p, int T, std::uint64_t seed) {
  hdwn::Rng rng(seed, 0);
  hdwn::Matrix x(p, T);
  for (int t = 0; t < T; ++t)
    for (int i = 0; i < p; ++i) x(i, t) = rng.normal();
  return x;
}

void BM_gq(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const int T = static_cast<int>(state.range(1));
  const hdwn::TimeSeriesMatrix x(panel(p, T, 1));
  for (auto _ : state) benchmark::DoNotOptimize(hdwn::g_q(x, 3));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_gq)
    ->Args({50, 100})
    ->Args({200, 400})
    ->Args({400, 200})   // p > T: gram route
    ->Args({900, 1000});

void BM_test_gq1(benchmark::State& state) {
  const hdwn::TimeSeriesMatrix x(panel(200, 200, 2));
  for (auto _ : state)
    benchmark::DoNotOptimize(hdwn::test_gq1(x, 1, 0.05).p_value);
}
BENCHMARK(BM_test_gq1);

void BM_hosking(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const hdwn::Matrix x = panel(p, 2 * p, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(hdwn::hosking({x, 3, 0}, 0.05).statistic);
}
BENCHMARK(BM_hosking)->Arg(50)->Arg(100)->Arg(200);

void BM_generate_var1(benchmark::State& state) {
  hdwn::ModelSpec model;
  model.alternative = {hdwn::Alternative::Kind::Var1, 0.1, 0.0, 0};
  const hdwn::PreparedModel prep(model, 100, 100);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    hdwn::Rng rng(4, rep++);
    benchmark::DoNotOptimize(prep.generate(rng).real_data().sum());
  }
}
BENCHMARK(BM_generate_var1);

}  // namespace

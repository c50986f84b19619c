#include <benchmark/benchmark.h>

#include "hdwn/distributions.hpp"

namespace {

void BM_chi2_upper_quantile(benchmark::State& state) {
  const double dof = static_cast<double>(state.range(0));
  double alpha = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hdwn::chi2_upper_quantile(alpha, dof));
    alpha = alpha < 0.9 ? alpha + 0.07 : 0.01;
  }
}
BENCHMARK(BM_chi2_upper_quantile)->Arg(75)->Arg(7500)->Arg(2430000);

void BM_normal_upper_quantile(benchmark::State& state) {
  double alpha = 0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hdwn::normal_upper_quantile(alpha));
    alpha = alpha < 0.9 ? alpha + 0.013 : 0.001;
  }
}
BENCHMARK(BM_normal_upper_quantile);

}  // namespace

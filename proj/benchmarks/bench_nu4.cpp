#include <benchmark/benchmark.h>

#include <numeric>

#include "hdwn/nu4.hpp"
#include "hdwn/rng.hpp"

namespace {

void BM_fisher_eigenvalues(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const int T = 10 * p;
  hdwn::Rng rng(1, 0);
  hdwn::Matrix x(p, T);
  for (int t = 0; t < T; ++t)
    for (int i = 0; i < p; ++i) x(i, t) = rng.normal();
  std::vector<int> split(T);
  std::iota(split.begin(), split.end(), 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(hdwn::fisher_eigenvalues(x, split, T / 2).back());
}
BENCHMARK(BM_fisher_eigenvalues)->Arg(20)->Arg(100)->Arg(200);

void BM_estimate_nu4(benchmark::State& state) {
  hdwn::Rng rng(2, 0);
  hdwn::Matrix x(20, 200);
  for (int t = 0; t < 200; ++t)
    for (int i = 0; i < 20; ++i) x(i, t) = rng.normal();
  hdwn::SplitConfig cfg;
  cfg.calibration_reps = 200;
  cfg.threads = 1;
  (void)hdwn::estimate_nu4(x, cfg);  // warm the calibration cache
  for (auto _ : state)
    benchmark::DoNotOptimize(hdwn::estimate_nu4(x, cfg).nu4_hat);
}
BENCHMARK(BM_estimate_nu4);

void BM_wachter_cdf(benchmark::State& state) {
  const hdwn::WachterDensity d(0.2, 0.2);
  double x = d.support_lo();
  for (auto _ : state) {
    benchmark::DoNotOptimize(d.cdf(x));
    x += 0.1;
    if (x > d.support_hi()) x = d.support_lo();
  }
}
BENCHMARK(BM_wachter_cdf);

}  // namespace

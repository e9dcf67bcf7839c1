#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "rriqa/divergence.hpp"
#include "rriqa/eval.hpp"
#include "rriqa/statmodel.hpp"

namespace {

std::vector<double> laplacian(std::size_t n) {
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<double> x(n);
  for (double& v : x) v = sign(rng) ? e(rng) : -e(rng);
  return x;
}

void BM_FitGgd(benchmark::State& state) {
  const auto x = laplacian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rriqa::fit_ggd(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitGgd)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

void BM_KldGgd(benchmark::State& state) {
  const rriqa::GgdParams p{1.3, 0.7};
  const rriqa::GgdParams q{2.1, 1.6};
  for (auto _ : state) benchmark::DoNotOptimize(rriqa::kld_ggd(p, q));
}
BENCHMARK(BM_KldGgd);

void BM_FitLogistic(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> d(static_cast<std::size_t>(state.range(0)));
  std::vector<double> mos(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = n(rng);
    mos[i] = 5.0 - 2.0 * std::tanh(d[i]) + 0.2 * n(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(rriqa::fit_logistic(d, mos));
}
BENCHMARK(BM_FitLogistic)->Arg(125)->Arg(3000)->Unit(benchmark::kMillisecond);

}  // namespace

#include <benchmark/benchmark.h>

#include <map>

#include "rriqa/decompose.hpp"
#include "rriqa/measures.hpp"
#include "rriqa/synthetic.hpp"

namespace {

const rriqa::RgbImage& image(int side) {
  static std::map<int, rriqa::RgbImage> cache;
  auto it = cache.find(side);
  if (it == cache.end()) it = cache.emplace(side, rriqa::dead_leaves(side, side, 1)).first;
  return it->second;
}

void BM_SteerablePyramid(benchmark::State& state) {
  const auto& plane = image(static_cast<int>(state.range(0))).g;
  for (auto _ : state) benchmark::DoNotOptimize(rriqa::steerable_pyramid(plane, {}));
}
BENCHMARK(BM_SteerablePyramid)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Wavelet(benchmark::State& state) {
  const auto& plane = image(static_cast<int>(state.range(0))).g;
  for (auto _ : state) benchmark::DoNotOptimize(rriqa::wavelet(plane, {}));
}
BENCHMARK(BM_Wavelet)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Dnt(benchmark::State& state) {
  const auto& plane = image(static_cast<int>(state.range(0))).g;
  for (auto _ : state) benchmark::DoNotOptimize(rriqa::dnt(plane, {}));
}
BENCHMARK(BM_Dnt)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Bemd(benchmark::State& state) {
  const auto& plane = image(static_cast<int>(state.range(0))).g;
  for (auto _ : state) benchmark::DoNotOptimize(rriqa::bemd(plane, {}));
}
BENCHMARK(BM_Bemd)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ExtractFeatures(benchmark::State& state) {
  rriqa::MeasureConfig c;
  c.measure = static_cast<rriqa::Measure>(state.range(0));
  const auto& img = image(256);
  for (auto _ : state) benchmark::DoNotOptimize(rriqa::extract_features(img, c));
  state.SetLabel(std::string(rriqa::to_string(c.measure)));
}
BENCHMARK(BM_ExtractFeatures)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

#include <benchmark/benchmark.h>

#include <vector>

#include "solvloop/group.hpp"
#include "solvloop/loop.hpp"
#include "solvloop/random.hpp"
#include "solvloop/subgroups.hpp"

using namespace solvloop;

namespace {

LoopCase make_case(SectionCase sc, double a, Preset kind) {
  const GroupParam p(a);
  return LoopCase(SectionSpec(sc, p, make_preset(sc, p, kind)));
}

void BM_GroupMul(benchmark::State& state) {
  const GroupParam p(2);
  Rng rng(1);
  const GroupElement g = rng.element(5), h = rng.element(5);
  for (auto _ : state) benchmark::DoNotOptimize(mul(p, g, h));
}
BENCHMARK(BM_GroupMul);

void BM_MatrixMul(benchmark::State& state) {
  const GroupParam p(2);
  Rng rng(1);
  const Matrix4 g = as_matrix(p, rng.element(5)), h = as_matrix(p, rng.element(5));
  for (auto _ : state) benchmark::DoNotOptimize(g * h);
}
BENCHMARK(BM_MatrixMul);

void BM_LoopMul(benchmark::State& state) {
  const auto sc = static_cast<SectionCase>(state.range(0));
  const LoopCase c = make_case(sc, 2, Preset::SinSmall);
  Rng rng(2);
  const LoopPoint m1 = rng.point(5), m2 = rng.point(5);
  for (auto _ : state) benchmark::DoNotOptimize(loop_mul(c, m1, m2));
}
BENCHMARK(BM_LoopMul)->Arg(0)->Arg(1)->Arg(2);

void BM_Rdiv(benchmark::State& state) {
  const auto sc = static_cast<SectionCase>(state.range(0));
  const LoopCase c = make_case(sc, 2, Preset::SinSmall);
  Rng rng(3);
  std::vector<std::pair<LoopPoint, LoopPoint>> pairs;
  for (int i = 0; i < 64; ++i) {
    const LoopPoint m1 = rng.point(2), m2 = rng.point(2);
    pairs.emplace_back(loop_mul(c, m1, m2), m2);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [b, m2] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(loop_rdiv(c, b, m2));
  }
}
BENCHMARK(BM_Rdiv)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_Transitivity(benchmark::State& state) {
  const GroupParam p(2);
  const SectionSpec spec(SectionCase::C, p, make_preset(SectionCase::C, p, Preset::SinSmall));
  TransitivityConfig cfg;
  cfg.samples = 10;
  cfg.solve.root1d.resolution = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sharp_transitivity_check(spec, cfg));
}
BENCHMARK(BM_Transitivity)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "gad/diamond.hpp"
#include "gad/fixtures.hpp"
#include "gad/homology.hpp"
#include "gad/lie.hpp"
#include "gad/smith.hpp"
#include "gad/weight_an.hpp"

namespace {

gad::IntMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> entry(-3, 3);
  gad::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 17);
  for (auto _ : state) benchmark::DoNotOptimize(gad::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(8, 64);

void BM_ExteriorHomology(benchmark::State& state) {
  const auto lb = gad::type_a(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const auto parts = gad::component_decomposition(gad::exterior_chain_graph(lb));
    benchmark::DoNotOptimize(gad::sum_homology(parts));
  }
}
BENCHMARK(BM_ExteriorHomology)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_WeightSweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const gad::WeightAtlas atlas(n);
    std::int64_t total = 0;
    for (const auto& w : gad::enumerate_omega(n)) total += gad::counted_rank(gad::weight_subgraph(atlas, w));
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_WeightSweep)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_FindSignature(benchmark::State& state) {
  const auto g = gad::exterior_chain_graph(gad::type_a(static_cast<std::size_t>(state.range(0)))).graph();
  for (auto _ : state) benchmark::DoNotOptimize(gad::find_signature(g));
}
BENCHMARK(BM_FindSignature)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_SignatureSearchOddVolume(benchmark::State& state) {
  const auto g = gad::fixtures::d2().graph;
  for (auto _ : state) benchmark::DoNotOptimize(gad::search_signature(g));
}
BENCHMARK(BM_SignatureSearchOddVolume);

}  // namespace

BENCHMARK_MAIN();

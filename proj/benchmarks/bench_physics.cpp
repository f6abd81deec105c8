#include <benchmark/benchmark.h>

#include "leeyang/statmech.hpp"

using namespace leeyang;

namespace {

SpinSystem ferromagnet(int n) {
  Rng rng(7);
  std::vector<std::vector<double>> J(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) J[i][j] = J[j][i] = uniform(rng, 0.0, 2.0);
  return SpinSystem(n, J);
}

void BM_LeeYangCheck(benchmark::State& state) {
  const auto s = ferromagnet(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lee_yang_check(s));
}
BENCHMARK(BM_LeeYangCheck)->DenseRange(4, 20, 4)->Unit(benchmark::kMicrosecond);

void BM_PartitionFugacity(benchmark::State& state) {
  const auto s = ferromagnet(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(partition_fugacity(s));
}
BENCHMARK(BM_PartitionFugacity)->DenseRange(4, 16, 4)->Unit(benchmark::kMicrosecond);

void BM_EdgePipeline(benchmark::State& state) {
  const auto s = ferromagnet(2);
  for (auto _ : state) benchmark::DoNotOptimize(edge_operator_pipeline(s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EdgePipeline)->RangeMultiplier(2)->Range(4, 32);

void BM_HeilmannLieb(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<WeightedGraph::Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0 + 0.1 * i});
  for (int i = 0; i + 2 < n; i += 2) edges.push_back({i, i + 2, 0.5});
  const WeightedGraph g(n, edges);
  for (auto _ : state) benchmark::DoNotOptimize(heilmann_lieb_poly(g));
}
BENCHMARK(BM_HeilmannLieb)->DenseRange(4, 12, 2);

void BM_CircleTheorem(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::vector<Complex>> a(n, std::vector<Complex>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a[i][j] = std::polar(0.8, 0.3 * (i + j));
      a[j][i] = std::conj(a[i][j]);
    }
  for (auto _ : state) benchmark::DoNotOptimize(circle_theorem_product(a));
}
BENCHMARK(BM_CircleTheorem)->DenseRange(2, 8, 2);

}  // namespace

BENCHMARK_MAIN();

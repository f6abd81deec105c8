#include <benchmark/benchmark.h>

#include "leeyang/composition.hpp"
#include "leeyang/operators.hpp"
#include "leeyang/oracle.hpp"
#include "leeyang/roots.hpp"

using namespace leeyang;

namespace {

MultiPoly dense(int n, int k, std::uint64_t seed) {
  Rng rng(seed);
  MultiPoly::TermMap t;
  for (const auto& a : box(ExponentVector::filled(static_cast<std::size_t>(n), k)))
    t[a] = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return MultiPoly(n, std::move(t));
}

void BM_Multiply(benchmark::State& state) {
  const auto k = static_cast<int>(state.range(0));
  const auto f = dense(3, k, 1), g = dense(3, k, 2);
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
  state.SetComplexityN(static_cast<long>(f.size()));
}
BENCHMARK(BM_Multiply)->DenseRange(1, 5)->Complexity();

void BM_UnivariateRoots(benchmark::State& state) {
  const auto f = dense(1, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(univariate_roots(f));
}
BENCHMARK(BM_UnivariateRoots)->RangeMultiplier(2)->Range(4, 64);

void BM_FindZeroStable(benchmark::State& state) {
  // prod_i (z_i + i) has no zero in the upper half-plane, so every slice runs.
  const int n = static_cast<int>(state.range(0));
  MultiPoly f = MultiPoly::constant(n, 1.0);
  for (int i = 0; i < n; ++i) f = f * (MultiPoly::variable(n, i) + MultiPoly::constant(n, Complex(0, 1)));
  const auto omega = DomainProduct::uniform(CircularDomain::upper_half_plane(), n);
  for (auto _ : state) benchmark::DoNotOptimize(find_zero(f, omega));
}
BENCHMARK(BM_FindZeroStable)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);

void BM_DiscSymbolAsano(benchmark::State& state) {
  ExponentVector kappa = ExponentVector::filled(static_cast<std::size_t>(state.range(0)), 2);
  kappa[0] = kappa[1] = 1;
  const auto t = builtin_asano(0, 1, kappa);
  for (auto _ : state) benchmark::DoNotOptimize(algebraic_symbol_disc(t));
}
BENCHMARK(BM_DiscSymbolAsano)->DenseRange(2, 5);

void BM_ComposeHalfplane(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ExponentVector kappa{k, k};
  const auto f = dense(4, k, 4), g = dense(4, k, 5);
  for (auto _ : state) benchmark::DoNotOptimize(compose_halfplane(f, g, kappa));
}
BENCHMARK(BM_ComposeHalfplane)->DenseRange(1, 3);

void BM_GraceCampaignDisc(benchmark::State& state) {
  GraceConfig cfg;
  cfg.oracle.slices_per_variable = 40;
  for (auto _ : state) benchmark::DoNotOptimize(grace_campaign_disc(static_cast<int>(state.range(0)), 1, cfg));
}
BENCHMARK(BM_GraceCampaignDisc)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "ufavg/channels.hpp"
#include "ufavg/schur.hpp"
#include "ufavg/sizes.hpp"
#include "ufavg/verify.hpp"

namespace {

void BM_BuildSchurBasis(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ufavg::build_schur_basis(2, t));
}
BENCHMARK(BM_BuildSchurBasis)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_CompactFiniteTwirl(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const ufavg::SchurOperatorSet s(ufavg::build_schur_basis(2, t));
  const ufavg::FiniteAveragingSet set(s, ufavg::heisenberg_weyl_bases(s));
  const auto rho = ufavg::random_states(s.space_dimension(), 1, 7).front();
  for (auto _ : state) benchmark::DoNotOptimize(ufavg::compact_finite_twirl(rho, s, set));
  state.counters["terms"] = static_cast<double>(set.size());
}
BENCHMARK(BM_CompactFiniteTwirl)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_HaarProjectionTwirl(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const ufavg::SchurOperatorSet s(ufavg::build_schur_basis(2, t));
  const auto rho = ufavg::random_states(s.space_dimension(), 1, 7).front();
  for (auto _ : state) benchmark::DoNotOptimize(ufavg::haar_projection_twirl(rho, s));
}
BENCHMARK(BM_HaarProjectionTwirl)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_MonteCarloHaar(benchmark::State& state) {
  const auto samples = static_cast<std::size_t>(state.range(0));
  const auto rho = ufavg::random_states(16, 1, 7).front();
  for (auto _ : state) benchmark::DoNotOptimize(ufavg::mc_haar_twirl(rho, 4, samples, 11));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * samples));
}
BENCHMARK(BM_MonteCarloHaar)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_BetaWeights(benchmark::State& state) {
  const ufavg::SchurOperatorSet s(ufavg::build_schur_basis(2, 4));
  const auto family = ufavg::sl2c_filter_family();
  for (auto _ : state) benchmark::DoNotOptimize(ufavg::beta_weights(s, family, 4));
}
BENCHMARK(BM_BetaWeights)->Unit(benchmark::kMillisecond);

void BM_RankOracle(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ufavg::operator_span_dim(2, t, 0, 4096, 3));
}
BENCHMARK(BM_RankOracle)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

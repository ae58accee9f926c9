#include <benchmark/benchmark.h>

#include <random>

#include "eqp/canonical.hpp"
#include "eqp/classify_01248.hpp"
#include "eqp/classify_3975.hpp"
#include "eqp/constructions.hpp"
#include "eqp/exact_cover.hpp"
#include "eqp/oa_bridge.hpp"
#include "eqp/spectral.hpp"

using namespace eqp;

namespace {

VertexSet random_half(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  VertexSet s(n);
  while (s.size() < (std::size_t{1} << (n - 1))) s.insert(static_cast<Vertex>(rng() & all_ones(n)));
  return s;
}

void BM_Wht(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = IntegerFunction::indicator(random_half(n, 1));
  for (auto _ : state) benchmark::DoNotOptimize(wht(f));
  state.SetComplexityN(std::int64_t{1} << n);
}
BENCHMARK(BM_Wht)->DenseRange(8, 16, 4)->Complexity(benchmark::oNLogN);

void BM_QuotientMatrix(benchmark::State& state) {
  const auto c0 = fdf_q12(kFdfTableChoice);
  for (auto _ : state) benchmark::DoNotOptimize(quotient_matrix(c0));
}
BENCHMARK(BM_QuotientMatrix);

void BM_CanonicalizeFdf(benchmark::State& state) {
  const auto c0 = fdf_q12(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(c0));
}
BENCHMARK(BM_CanonicalizeFdf)->Arg(kFdfTableChoice)->Arg(kFdfTableChoice ^ 0x800)->Unit(benchmark::kMillisecond);

void BM_CanonicalizeRandom(benchmark::State& state) {
  const auto s = random_half(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(s));
}
BENCHMARK(BM_CanonicalizeRandom)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

void BM_CoveringCount(benchmark::State& state) {
  const auto census = q3975::enumerate_bitriple_systems();
  const auto& b = census.classes[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(count_solutions(q3975::covering_instance(b.system)));
}
BENCHMARK(BM_CoveringCount)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SignSystem(benchmark::State& state) {
  const auto c0 = fdf_q12(kFdfTableChoice);
  const auto support = wht(IntegerFunction::associated(c0, 9, 7)).support();
  for (auto _ : state) benchmark::DoNotOptimize(q3975::build_sign_system(support));
}
BENCHMARK(BM_SignSystem)->Unit(benchmark::kMillisecond);

void BM_LocalStagesFromP0(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(q01248::run_chain(true, 4));
}
BENCHMARK(BM_LocalStagesFromP0)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_VerifyOa(benchmark::State& state) {
  const auto a = fdf_q12(kFdfTableChoice);
  for (auto _ : state) benchmark::DoNotOptimize(verify_oa(12, a.members(), 2));
}
BENCHMARK(BM_VerifyOa)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

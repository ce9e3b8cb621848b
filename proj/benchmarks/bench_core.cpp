#include <benchmark/benchmark.h>

#include "twistlab/fiber.hpp"
#include "twistlab/forms.hpp"
#include "twistlab/plucker.hpp"
#include "twistlab/triang.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;

namespace {

CyclicMatrix stack(int k, int l, int n) {
  auto v = sample_top_cell(k, n, 1, 0);
  auto w = alt(sample_top_cell(l, n, 2, 0));
  return CyclicMatrix(vstack(v.m, w.m), k - 1);
}

void BM_RightTwist(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0)), l = static_cast<int>(st.range(1)), n = static_cast<int>(st.range(2));
  const auto u = stack(k, l, n);
  for (auto _ : st) benchmark::DoNotOptimize(right_twist(u, k, l));
}
BENCHMARK(BM_RightTwist)->Args({2, 1, 5})->Args({2, 2, 6})->Args({3, 3, 8});

void BM_Roundtrip(benchmark::State& st) {
  const auto u = stack(2, 2, 6);
  for (auto _ : st) benchmark::DoNotOptimize(left_twist(right_twist(u, 2, 2), 2, 2));
}
BENCHMARK(BM_Roundtrip);

void BM_Plucker(benchmark::State& st) {
  const auto v = sample_top_cell(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), 3, 0);
  for (auto _ : st) benchmark::DoNotOptimize(plucker(v));
}
BENCHMARK(BM_Plucker)->Args({2, 5})->Args({3, 6})->Args({3, 8});

void BM_CellOf(benchmark::State& st) {
  const auto v = sample_in_cell(AffinePermutation::parse("[2,1,3,5,4,6]"), 2, 4, 0);
  for (auto _ : st) benchmark::DoNotOptimize(cell_of(v));
}
BENCHMARK(BM_CellOf);

void BM_FiberClaims(benchmark::State& st) {
  const auto cands = candidate_cells(6, 2, 2);
  const auto v = sample_top_cell(2, 6, 5, 0);
  const auto z = sample_positive(4, 6, 6);
  const auto setup = fiber_setup(v, z);
  for (auto _ : st) benchmark::DoNotOptimize(claims(setup, cands));
}
BENCHMARK(BM_FiberClaims)->Unit(benchmark::kMillisecond);

void BM_Triangulations(benchmark::State& st) {
  const auto cands = candidate_cells(5, 2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_triangulations(5, 2, 2, cands, 1));
}
BENCHMARK(BM_Triangulations)->Unit(benchmark::kMillisecond);

void BM_AffineStanley(benchmark::State& st) {
  const auto f = AffinePermutation::parse("[2,1,4,3,6,5,8,7]");
  for (auto _ : st) benchmark::DoNotOptimize(affine_stanley_coeff(f, rectangle(2, 2)));
}
BENCHMARK(BM_AffineStanley);

void BM_TopPullback(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(verify_top_pullback(2, 1, 5, 1, 7));
}
BENCHMARK(BM_TopPullback)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

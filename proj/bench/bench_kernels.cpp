// Serial vs OpenMP kernels. Sizes are chosen to finish in seconds on one core.

#include <benchmark/benchmark.h>

#include <algorithm>

#include "weylprop/cobar.hpp"
#include "weylprop/homology.hpp"
#include "weylprop/linalg.hpp"
#include "weylprop/suites.hpp"
#include "weylprop/weyl.hpp"

using namespace weylprop;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_NextLevel(benchmark::State& state) {
  const int r = 3, t = 2, g = 1;
  BasisLevel level = first_level(r, t, g);
  for (int p = 1; p < 3; ++p) level = next_level(level, r, t, g);
  for (auto _ : state) {
    auto next = next_level(level, r, t, g, mode(state));
    benchmark::DoNotOptimize(next.graphs.size());
  }
}
BENCHMARK(BM_NextLevel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SplitLevel(benchmark::State& state) {
  const int r = 3, t = 2, g = 1;
  BasisLevel level = first_level(r, t, g);
  for (int p = 1; p < 3; ++p) level = next_level(level, r, t, g);
  std::vector<GraphCode> codes, nulls;
  for (const auto& x : level.graphs) codes.push_back(encode(x));
  for (const auto& x : level.null_graphs) nulls.push_back(encode(x));
  std::sort(codes.begin(), codes.end());
  std::sort(nulls.begin(), nulls.end());
  for (auto _ : state) {
    auto step = split_level(codes, nulls, r, t, g, true, mode(state));
    benchmark::DoNotOptimize(step.columns.size());
  }
}
BENCHMARK(BM_SplitLevel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Star(benchmark::State& state) {
  Rng rng(7);
  const Truncation bounds{2, 3};
  const auto basis = random_basis(rng, 3, true);
  const auto a = random_reduced(rng, basis, -1, bounds, 0.6);
  const auto b = random_reduced(rng, basis, -1, bounds, 0.6);
  for (auto _ : state) {
    auto c = star(basis, a, b, bounds, mode(state));
    benchmark::DoNotOptimize(c.components.size());
  }
}
BENCHMARK(BM_Star)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

const SparseMatrix& sample_boundary() {
  static const SparseMatrix m = [] {
    const auto cell = build_complex(3, 2, 1);
    const SparseMatrix* best = &cell.boundaries.front();
    for (const auto& b : cell.boundaries)
      if (b.nonzeros() > best->nonzeros()) best = &b;
    return *best;
  }();
  return m;
}

void BM_RankExact(benchmark::State& state) {
  const auto& m = sample_boundary();
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
  state.counters["nnz"] = static_cast<double>(m.nonzeros());
}
BENCHMARK(BM_RankExact)->Unit(benchmark::kMillisecond);

void BM_RankMod(benchmark::State& state) {
  const auto& m = sample_boundary();
  for (auto _ : state) benchmark::DoNotOptimize(rank_mod(m, 2147483629u));
  state.counters["nnz"] = static_cast<double>(m.nonzeros());
}
BENCHMARK(BM_RankMod)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

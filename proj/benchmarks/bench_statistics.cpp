#include <benchmark/benchmark.h>

#include <vector>

#include "robustest/correlation.hpp"
#include "robustest/ksdistfree.hpp"
#include "robustest/null_tables.hpp"
#include "robustest/twosample.hpp"
#include "robustest/variates.hpp"

using namespace robustest;

namespace {

std::vector<double> normals(std::size_t n, std::uint64_t stream) {
  RngStream rng(99, stream);
  std::vector<double> v(n);
  for (double& e : v) e = dist::standard_normal(rng);
  return v;
}

PairedSample pairs(std::size_t n) { return PairedSample(normals(n, 1), normals(n, 2)); }

// Quadratic pair enumeration, the reference the fast path replaces.
double kendall_pairs(const PairedSample& d) {
  const auto& x = d.x().values();
  const auto& y = d.y().values();
  long concordant = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) concordant += (x[i] - x[j]) * (y[i] - y[j]) > 0;
  return static_cast<double>(concordant);
}

void BM_KendallFast(benchmark::State& state) {
  const auto d = pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kendall_statistics(d));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallFast)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_KendallPairs(benchmark::State& state) {
  const auto d = pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kendall_pairs(d));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallPairs)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_SpearmanRobust(benchmark::State& state) {
  const auto d = pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spearman_statistics(d));
}
BENCHMARK(BM_SpearmanRobust)->RangeMultiplier(4)->Range(64, 16384);

void BM_KsIndependenceStat(benchmark::State& state) {
  const auto d = pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ks_independence_stat(d));
}
BENCHMARK(BM_KsIndependenceStat)->RangeMultiplier(2)->Range(50, 800);

void BM_MannWhitney(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Sample x(normals(n, 3)), y(normals(3 * n, 4));
  for (auto _ : state) benchmark::DoNotOptimize(mannwhitney_statistics(x, y));
}
BENCHMARK(BM_MannWhitney)->RangeMultiplier(4)->Range(64, 16384);

void BM_PearsonNullTable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_pearson_null_table(n, kTableSeed, 10000));
}
BENCHMARK(BM_PearsonNullTable)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

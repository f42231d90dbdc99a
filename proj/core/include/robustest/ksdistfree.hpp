#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "robustest/null_tables.hpp"
#include "robustest/outcome.hpp"
#include "robustest/rng.hpp"
#include "robustest/sample.hpp"
#include "robustest/tiebreak.hpp"

namespace robustest {

inline constexpr std::size_t kDefaultMcReplicates = 1000;

enum class KsKind { independence, symmetry };

/// Simulated null statistics for one (kind, n, seed), sorted ascending.
struct KsNullCache {
  KsKind kind = KsKind::independence;
  std::size_t n = 0;
  std::vector<double> draws;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

/// sqrt(n) sup_{s,t} |H_n(t, s) - F_n(t) G_n(s)| over the observation grid.
double ks_independence_stat(const PairedSample& d);

/// sqrt(n) sup_t |F_n(t) - F_{n,-}(t)|, F_{n,-} the ECDF of -D.
double ks_symmetry_stat(const Sample& diffs);

/// Shared, lazily built null draws. Independence draws use uniform pairs,
/// symmetry draws use standard normal samples.
std::shared_ptr<const KsNullCache> ks_null_cache(KsKind kind, std::size_t n,
                                                 std::size_t replicates,
                                                 std::uint64_t seed);

/// Monte Carlo independence test. The null draws are seeded from rng.seed();
/// tie-breaking consumes child streams of rng.
TestOutcome ks_independence_test(const PairedSample& d,
                                 std::size_t replicates = kDefaultMcReplicates,
                                 RngStream rng = RngStream(kTableSeed),
                                 TiesBreak ties = TiesBreak::none);

/// Monte Carlo test of "D is symmetric about 0".
TestOutcome ks_symmetry_test(const Sample& diffs,
                             std::size_t replicates = kDefaultMcReplicates,
                             RngStream rng = RngStream(kTableSeed));

}  // namespace robustest

#include "robustest/ksdistfree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "robustest/errors.hpp"
#include "robustest/parallel.hpp"
#include "robustest/variates.hpp"

namespace robustest {
namespace {

const char* kind_label(KsKind kind) {
  return kind == KsKind::independence ? "ks-independence-null" : "ks-symmetry-null";
}

// Same statistic on raw arrays; used by the null simulation.
double independence_stat(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> ys(y.begin(), y.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const std::size_t m = ys.size();

  std::vector<std::size_t> y_index(n);
  std::vector<std::int64_t> y_cum(m, 0);  // #{y <= ys[j]}
  for (std::size_t i = 0; i < n; ++i) {
    y_index[i] = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y[i]) - ys.begin());
    ++y_cum[y_index[i]];
  }
  for (std::size_t j = 1; j < m; ++j) y_cum[j] += y_cum[j - 1];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  // Work in integers: n^2 * |H_n - F_n G_n| = |n * joint - added * y_cum|.
  const auto nn = static_cast<std::int64_t>(n);
  std::vector<std::int64_t> hist(m, 0);
  std::int64_t best = 0;
  std::size_t k = 0;
  while (k < n) {
    std::size_t end = k + 1;
    while (end < n && x[order[end]] == x[order[k]]) ++end;
    for (std::size_t t = k; t < end; ++t) ++hist[y_index[order[t]]];
    const auto added = static_cast<std::int64_t>(end);
    std::int64_t joint = 0;
    for (std::size_t j = 0; j < m; ++j) {
      joint += hist[j];
      const std::int64_t diff = nn * joint - added * y_cum[j];
      best = std::max(best, diff < 0 ? -diff : diff);
    }
    k = end;
  }
  const double nd = static_cast<double>(n);
  return std::sqrt(nd) * static_cast<double>(best) / (nd * nd);
}

double symmetry_stat(std::span<const double> diffs) {
  std::vector<double> d(diffs.begin(), diffs.end());
  std::sort(d.begin(), d.end());
  const auto nn = static_cast<std::int64_t>(d.size());
  std::int64_t best = 0;
  auto eval = [&](double t) {
    // n F_n(t) = #{D <= t}; n F_{n,-}(t) = #{-D <= t} = #{D >= -t}.
    const auto below = static_cast<std::int64_t>(std::upper_bound(d.begin(), d.end(), t) - d.begin());
    const auto mirrored =
        nn - static_cast<std::int64_t>(std::lower_bound(d.begin(), d.end(), -t) - d.begin());
    const std::int64_t diff = below - mirrored;
    best = std::max(best, diff < 0 ? -diff : diff);
  };
  for (double v : d) {
    eval(v);
    eval(-v);
  }
  const double nd = static_cast<double>(d.size());
  return std::sqrt(nd) * static_cast<double>(best) / nd;
}

struct NullCacheStore {
  std::mutex mutex;
  std::map<std::tuple<int, std::size_t, std::size_t, std::uint64_t>,
           std::shared_ptr<const KsNullCache>>
      entries;
};

NullCacheStore& null_store() {
  static NullCacheStore store;
  return store;
}

KsNullCache simulate_null(KsKind kind, std::size_t n, std::size_t replicates, std::uint64_t seed) {
  KsNullCache cache{kind, n, std::vector<double>(replicates), replicates, seed};
  const RngStream base(seed, mix64((kind == KsKind::independence ? 0x4B5349ULL : 0x4B5353ULL) ^
                                   (static_cast<std::uint64_t>(n) << 20)));
  parallel_for(replicates, 0, [&](std::size_t r) {
    RngStream rng = base.split(r);
    std::vector<double> a(n), b;
    if (kind == KsKind::independence) {
      b.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.uniform();
        b[i] = rng.uniform();
      }
      cache.draws[r] = independence_stat(a, b);
    } else {
      for (std::size_t i = 0; i < n; ++i) a[i] = dist::standard_normal(rng);
      cache.draws[r] = symmetry_stat(a);
    }
  });
  std::sort(cache.draws.begin(), cache.draws.end());
  return cache;
}

}  // namespace

double ks_independence_stat(const PairedSample& d) {
  return independence_stat(d.x().values(), d.y().values());
}

double ks_symmetry_stat(const Sample& diffs) { return symmetry_stat(diffs.values()); }

std::shared_ptr<const KsNullCache> ks_null_cache(KsKind kind, std::size_t n,
                                                 std::size_t replicates, std::uint64_t seed) {
  if (n < 2) throw InsufficientData("Kolmogorov-Smirnov null needs n >= 2");
  if (replicates < 1) throw DomainError("Monte Carlo replicates must be positive");
  auto& store = null_store();
  const auto key = std::make_tuple(static_cast<int>(kind), n, replicates, seed);
  std::lock_guard lock(store.mutex);
  if (auto it = store.entries.find(key); it != store.entries.end()) return it->second;

  const auto path = cache_file(kind_label(kind), n, seed, replicates);
  if (!path.empty()) {
    if (auto env = read_envelope(path); env && env->kind == kind_label(kind) && env->n == n &&
                                        env->seed == seed && env->replicates == replicates &&
                                        env->grid.empty() && env->values.size() == replicates &&
                                        std::is_sorted(env->values.begin(), env->values.end())) {
      auto cache = std::make_shared<const KsNullCache>(
          KsNullCache{kind, n, std::move(env->values), replicates, seed});
      store.entries.emplace(key, cache);
      return cache;
    }
  }
  auto cache = std::make_shared<const KsNullCache>(simulate_null(kind, n, replicates, seed));
  if (!path.empty()) {
    write_envelope(path, TableEnvelope{kind_label(kind), n, seed, replicates, {}, cache->draws});
  }
  store.entries.emplace(key, cache);
  return cache;
}

TestOutcome ks_independence_test(const PairedSample& d, std::size_t replicates, RngStream rng,
                                 TiesBreak ties) {
  TestOutcome out;
  RngStream rx = rng.split(1), ry = rng.split(2);
  const PairedSample clean(resolve_ties(d.x(), ties, rx, "x", out.notes),
                           resolve_ties(d.y(), ties, ry, "y", out.notes));
  const auto null = ks_null_cache(KsKind::independence, d.size(), replicates, rng.seed());
  out.method = "Kolmogorov-Smirnov test of independence";
  out.statistic_name = "KS";
  out.statistic = ks_independence_stat(clean);
  out.p_value = mc_pvalue_sorted(out.statistic, null->draws);
  out.alternative = "X and Y are not independent";
  out.n_info = {d.size()};
  out.notes.push_back("Monte Carlo p-value from " + std::to_string(replicates) + " null replicates");
  return out;
}

TestOutcome ks_symmetry_test(const Sample& diffs, std::size_t replicates, RngStream rng) {
  if (diffs.size() < 2) throw InsufficientData("symmetry test needs at least 2 differences");
  const auto null = ks_null_cache(KsKind::symmetry, diffs.size(), replicates, rng.seed());
  TestOutcome out;
  out.method = "Kolmogorov-Smirnov test of symmetry";
  out.statistic_name = "K";
  out.statistic = ks_symmetry_stat(diffs);
  out.p_value = mc_pvalue_sorted(out.statistic, null->draws);
  out.alternative = "the distribution is not symmetric about 0";
  out.n_info = {diffs.size()};
  out.notes.push_back("Monte Carlo p-value from " + std::to_string(replicates) + " null replicates");
  return out;
}

}  // namespace robustest

#include "robustest/null_tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <tuple>

#include "robustest/distributions.hpp"
#include "robustest/errors.hpp"
#include "robustest/variates.hpp"

namespace robustest {
namespace {

constexpr const char* kPearsonKind = "pearson-robust-null";
constexpr const char* kMagic = "robustest-table v1";

// Robust Pearson statistic on raw arrays; mirrors pearson_robust without
// the Sample validation overhead. Returns NaN when undefined.
double pearson_robust_stat(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += (x[i] - mx) * (y[i] - my);
  const double zbar = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dz = (x[i] - mx) * (y[i] - my) - zbar;
    ss += dz * dz;
  }
  return ss > 0.0 ? sum / std::sqrt(ss) : std::nan("");
}

struct TableCache {
  std::mutex mutex;
  std::map<std::tuple<std::size_t, std::uint64_t, std::size_t>,
           std::shared_ptr<const QuantileTable>>
      tables;
};

TableCache& pearson_cache() {
  static TableCache cache;
  return cache;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

double QuantileTable::quantile_in_grid(double p) const {
  if (probs.empty()) throw DomainError("empty quantile table");
  if (p <= probs.front()) return quantiles.front();
  if (p >= probs.back()) return quantiles.back();
  const auto it = std::upper_bound(probs.begin(), probs.end(), p);
  const std::size_t hi = static_cast<std::size_t>(it - probs.begin());
  const std::size_t lo = hi - 1;
  const double w = (p - probs[lo]) / (probs[hi] - probs[lo]);
  return quantiles[lo] + w * (quantiles[hi] - quantiles[lo]);
}

std::vector<double> standard_probability_grid() {
  std::vector<double> grid;
  grid.reserve(199);
  for (int k = 1; k <= 199; ++k) grid.push_back(k / 200.0);
  return grid;
}

std::vector<double> empirical_quantiles(std::span<const double> sorted_draws,
                                        std::span<const double> probs) {
  if (sorted_draws.empty()) throw InsufficientData("no draws to take quantiles of");
  const double last = static_cast<double>(sorted_draws.size() - 1);
  std::vector<double> out;
  out.reserve(probs.size());
  for (double p : probs) {
    const double h = last * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted_draws.size() - 1);
    out.push_back(sorted_draws[lo] + (h - static_cast<double>(lo)) *
                                         (sorted_draws[hi] - sorted_draws[lo]));
  }
  return out;
}

QuantileTable build_pearson_null_table(std::size_t n, std::uint64_t seed,
                                       std::size_t replicates) {
  if (n < 3) throw InsufficientData("robust Pearson null table needs n >= 3");
  if (replicates < 2) throw DomainError("need at least 2 replicates");
  std::vector<double> draws;
  draws.reserve(replicates);
  std::vector<double> x(n), y(n);
  const RngStream base(seed, mix64(0x7065617273ULL ^ n));  // "pears"
  for (std::size_t r = 0; r < replicates; ++r) {
    RngStream rng = base.split(r);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = dist::standard_normal(rng);
      y[i] = dist::standard_normal(rng);
    }
    const double t = pearson_robust_stat(x, y);
    if (std::isfinite(t)) draws.push_back(t);
  }
  std::sort(draws.begin(), draws.end());
  QuantileTable table;
  table.kind = kPearsonKind;
  table.n = n;
  table.probs = standard_probability_grid();
  table.quantiles = empirical_quantiles(draws, table.probs);
  table.replicates = replicates;
  table.seed = seed;
  return table;
}

std::shared_ptr<const QuantileTable> pearson_null_table(std::size_t n, std::uint64_t seed,
                                                        std::size_t replicates) {
  auto& cache = pearson_cache();
  const auto key = std::make_tuple(n, seed, replicates);
  std::lock_guard lock(cache.mutex);
  if (auto it = cache.tables.find(key); it != cache.tables.end()) return it->second;

  const auto path = cache_file(kPearsonKind, n, seed, replicates);
  if (!path.empty()) {
    if (auto env = read_envelope(path);
        env && env->kind == kPearsonKind && env->n == n && env->seed == seed &&
        env->replicates == replicates && env->grid == standard_probability_grid() &&
        env->values.size() == env->grid.size()) {
      auto table = std::make_shared<QuantileTable>();
      table->kind = env->kind;
      table->n = n;
      table->probs = std::move(env->grid);
      table->quantiles = std::move(env->values);
      table->replicates = replicates;
      table->seed = seed;
      cache.tables.emplace(key, table);
      return table;
    }
  }

  auto table = std::make_shared<const QuantileTable>(build_pearson_null_table(n, seed, replicates));
  if (!path.empty()) {
    write_envelope(path, TableEnvelope{table->kind, n, seed, replicates, table->probs,
                                       table->quantiles});
  }
  cache.tables.emplace(key, table);
  return table;
}

double pearson_null_quantile(std::size_t n, double p) {
  if (n < 3) throw InsufficientData("robust Pearson quantile needs n >= 3");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("probability must lie in (0, 1)");
  const double df = static_cast<double>(n - 2);
  if (n >= kPearsonTableLimit) return dist::t_quantile(p, df);
  const auto table = pearson_null_table(n);
  const double p_lo = table->probs.front();
  const double p_hi = table->probs.back();
  if (p >= p_lo && p <= p_hi) return table->quantile_in_grid(p);
  // Outside the grid, scale the Student tail so it passes through the
  // extreme tabulated quantile.
  if (p < p_lo) {
    const double anchor = dist::t_cdf(table->quantiles.front(), df);
    return dist::t_quantile(std::min(p * anchor / p_lo, 0.5), df);
  }
  const double anchor = dist::t_sf(table->quantiles.back(), df);
  return dist::t_quantile(1.0 - std::min((1.0 - p) * anchor / (1.0 - p_hi), 0.5), df);
}

double pearson_null_pvalue(std::size_t n, double statistic) {
  if (n < 3) throw InsufficientData("robust Pearson p-value needs n >= 3");
  if (std::isnan(statistic)) return 1.0;
  const double df = static_cast<double>(n - 2);
  if (n >= kPearsonTableLimit) return dist::two_sided_t_p(statistic, df);
  const auto table = pearson_null_table(n);
  const auto& q = table->quantiles;
  const auto& pr = table->probs;
  double cdf;
  if (statistic < q.front()) {
    cdf = pr.front() * dist::t_cdf(statistic, df) / dist::t_cdf(q.front(), df);
  } else if (statistic > q.back()) {
    cdf = 1.0 - (1.0 - pr.back()) * dist::t_sf(statistic, df) / dist::t_sf(q.back(), df);
  } else {
    const auto it = std::upper_bound(q.begin(), q.end(), statistic);
    const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - q.begin()), q.size() - 1);
    const std::size_t lo = hi - 1;
    const double width = q[hi] - q[lo];
    const double w = width > 0.0 ? (statistic - q[lo]) / width : 1.0;
    cdf = pr[lo] + std::clamp(w, 0.0, 1.0) * (pr[hi] - pr[lo]);
  }
  return std::min(1.0, 2.0 * std::min(cdf, 1.0 - cdf));
}

double mc_pvalue(double observed, std::span<const double> null_draws) {
  if (null_draws.empty()) throw InsufficientData("Monte Carlo p-value needs null draws");
  std::size_t at_least = 0;
  for (double d : null_draws) at_least += (d >= observed);
  return static_cast<double>(1 + at_least) / static_cast<double>(null_draws.size() + 1);
}

double mc_pvalue_sorted(double observed, std::span<const double> sorted_draws) {
  if (sorted_draws.empty()) throw InsufficientData("Monte Carlo p-value needs null draws");
  const auto it = std::lower_bound(sorted_draws.begin(), sorted_draws.end(), observed);
  const auto at_least = static_cast<std::size_t>(sorted_draws.end() - it);
  return static_cast<double>(1 + at_least) / static_cast<double>(sorted_draws.size() + 1);
}

std::filesystem::path cache_directory() {
  if (const char* dir = std::getenv("ROBUSTEST_CACHE"); dir != nullptr && *dir != '\0') {
    return dir;
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return std::filesystem::path(xdg) / "robustest";
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return std::filesystem::path(home) / ".cache" / "robustest";
  }
  return {};
}

std::filesystem::path cache_file(const std::string& kind, std::size_t n, std::uint64_t seed,
                                 std::size_t replicates) {
  const auto dir = cache_directory();
  if (dir.empty()) return {};
  return dir / (kind + "_n" + std::to_string(n) + "_s" + std::to_string(seed) + "_r" +
                std::to_string(replicates) + ".tbl");
}

bool write_envelope(const std::filesystem::path& path, const TableEnvelope& env) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  // Write-then-rename so concurrent readers never see a partial file.
  const auto tmp = path.string() + ".tmp" + std::to_string(mix64(
                       reinterpret_cast<std::uintptr_t>(&env) ^ env.seed));
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return false;
    out << kMagic << '\n'
        << "kind=" << env.kind << '\n'
        << "n=" << env.n << '\n'
        << "seed=" << env.seed << '\n'
        << "replicates=" << env.replicates << '\n'
        << "grid=";
    if (env.grid.empty()) {
      out << "draws";
    } else {
      for (std::size_t i = 0; i < env.grid.size(); ++i) {
        if (i > 0) out << ',';
        out << format_double(env.grid[i]);
      }
    }
    out << '\n' << "values=" << env.values.size() << '\n';
    for (double v : env.values) out << format_double(v) << '\n';
    if (!out) return false;
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    return false;
  }
  return true;
}

std::optional<TableEnvelope> read_envelope(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != kMagic) return std::nullopt;
  TableEnvelope env;
  auto field = [&](const std::string& name, std::string& value) {
    if (!std::getline(in, line)) return false;
    const std::string prefix = name + "=";
    if (line.rfind(prefix, 0) != 0) return false;
    value = line.substr(prefix.size());
    return true;
  };
  std::string n, seed, replicates, grid, count;
  try {
    if (!field("kind", env.kind) || !field("n", n) || !field("seed", seed) ||
        !field("replicates", replicates) || !field("grid", grid) || !field("values", count)) {
      return std::nullopt;
    }
    env.n = std::stoull(n);
    env.seed = std::stoull(seed);
    env.replicates = std::stoull(replicates);
    if (grid != "draws") {
      std::istringstream gs(grid);
      std::string item;
      while (std::getline(gs, item, ',')) env.grid.push_back(std::stod(item));
    }
    const std::size_t expected = std::stoull(count);
    env.values.reserve(expected);
    while (env.values.size() < expected && std::getline(in, line)) {
      env.values.push_back(std::stod(line));
    }
    if (env.values.size() != expected) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return env;
}

}  // namespace robustest

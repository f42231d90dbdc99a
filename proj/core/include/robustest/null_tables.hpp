#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace robustest {

/// Master seed for every shipped Monte Carlo null table.
inline constexpr std::uint64_t kTableSeed = 0x5EEDC0DE;
inline constexpr std::size_t kPearsonTableReplicates = 100'000;
/// Below this size the robust Pearson statistic is calibrated from a
/// simulated Gaussian null; from here on Student t(n - 2) is used.
inline constexpr std::size_t kPearsonTableLimit = 130;

/// Monte Carlo null quantiles for one statistic at one sample size.
struct QuantileTable {
  std::string kind;
  std::size_t n = 0;
  std::vector<double> probs;
  std::vector<double> quantiles;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;

  /// Linear interpolation inside the grid. Outside it the caller supplies
  /// the tail shape; see pearson_null_quantile.
  double quantile_in_grid(double p) const;
};

/// The probability grid 0.005, 0.010, ..., 0.995.
std::vector<double> standard_probability_grid();

/// Quantiles at `probs` of already-sorted draws (linear interpolation
/// between order statistics, R type 7).
std::vector<double> empirical_quantiles(std::span<const double> sorted_draws,
                                        std::span<const double> probs);

/// Robust Pearson statistic null table at size n (3 <= n < 130), simulated
/// from independent standard Gaussian pairs. Generated on first use, kept in
/// memory, and persisted under cache_directory() when that is writable.
std::shared_ptr<const QuantileTable> pearson_null_table(
    std::size_t n, std::uint64_t seed = kTableSeed,
    std::size_t replicates = kPearsonTableReplicates);

/// Simulates the table without touching any cache.
QuantileTable build_pearson_null_table(std::size_t n, std::uint64_t seed,
                                       std::size_t replicates);

/// Quantile of the robust Pearson statistic under the Gaussian null:
/// Monte Carlo table for n < 130, Student t(n - 2) beyond.
double pearson_null_quantile(std::size_t n, double p);

/// Two-sided p-value of an observed robust Pearson statistic, read off the
/// same reference distribution as pearson_null_quantile.
double pearson_null_pvalue(std::size_t n, double statistic);

/// Add-one Monte Carlo upper-tail p-value: (1 + #{draw >= observed}) / (N + 1).
double mc_pvalue(double observed, std::span<const double> null_draws);
/// Same, for draws already sorted ascending (binary search).
double mc_pvalue_sorted(double observed, std::span<const double> sorted_draws);

// Cache envelope shared by every persisted Monte Carlo table.
//
//   robustest-table v1
//   kind=<label>
//   n=<size>
//   seed=<decimal>
//   replicates=<count>
//   grid=<comma separated probabilities or "draws">
//   values=<count>
//   <one value per line, %.17g>

struct TableEnvelope {
  std::string kind;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
  std::vector<double> grid;  // empty for raw draws
  std::vector<double> values;
};

/// Directory named by ROBUSTEST_CACHE, else $XDG_CACHE_HOME/robustest, else
/// $HOME/.cache/robustest. Empty when none is set.
std::filesystem::path cache_directory();
std::filesystem::path cache_file(const std::string& kind, std::size_t n,
                                 std::uint64_t seed, std::size_t replicates);

/// Returns false when the file cannot be written; never throws on I/O.
bool write_envelope(const std::filesystem::path& path, const TableEnvelope& env);
/// nullopt for a missing, truncated or malformed file.
std::optional<TableEnvelope> read_envelope(const std::filesystem::path& path);

}  // namespace robustest

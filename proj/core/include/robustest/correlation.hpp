#pragma once

#include <optional>

#include "robustest/outcome.hpp"
#include "robustest/null_tables.hpp"
#include "robustest/rng.hpp"
#include "robustest/sample.hpp"
#include "robustest/tiebreak.hpp"

namespace robustest {

struct CorrelationResult : TestOutcome {
  /// Plug-in estimate of the asymptotic variance (robust variants only).
  std::optional<double> variance_estimate;
};

/// Kendall U-statistic pieces for a tie-free paired sample.
struct KendallStatistics {
  double t_n = 0.0;  ///< mean over ordered pairs of 1{concordant} - 1/2
  double tau = 0.0;  ///< 2 t_n
  double v_n = 0.0;  ///< Hoeffding-projection variance estimate
  double concordant = 0.0;
  double discordant = 0.0;
};

/// O(n log n): inversion count for t_n and a Fenwick tree for the
/// dominance counts inside v_n. Requires tie-free margins.
KendallStatistics kendall_statistics(const PairedSample& d);

struct SpearmanStatistics {
  double rho = 0.0;
  /// (144 / (n - 1)) * sum (psi_k - mean psi)^2, psi the empirical influence
  /// function of the rank correlation.
  double v_n = 0.0;
};

/// O(n log n) with suffix sums over the rank orders. Requires tie-free margins.
SpearmanStatistics spearman_statistics(const PairedSample& d);

/// Usual Pearson t test against Student t(n - 2), Fisher-z interval.
CorrelationResult pearson_classic(const PairedSample& d, double alpha = 0.05);

/// Pearson covariance test studentized by the empirical standard deviation of
/// the centered cross-products. Delta-method interval for rho.
CorrelationResult pearson_robust(const PairedSample& d, double alpha = 0.05);

CorrelationResult kendall_classic(const PairedSample& d, double alpha = 0.05,
                                  TiesBreak ties = TiesBreak::none,
                                  RngStream rng = RngStream(kTableSeed));
CorrelationResult kendall_robust(const PairedSample& d, double alpha = 0.05,
                                 TiesBreak ties = TiesBreak::none,
                                 RngStream rng = RngStream(kTableSeed));

CorrelationResult spearman_classic(const PairedSample& d, double alpha = 0.05,
                                   TiesBreak ties = TiesBreak::none,
                                   RngStream rng = RngStream(kTableSeed));
CorrelationResult spearman_robust(const PairedSample& d, double alpha = 0.05,
                                  TiesBreak ties = TiesBreak::none,
                                  RngStream rng = RngStream(kTableSeed));

}  // namespace robustest

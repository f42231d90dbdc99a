#pragma once

#include <cstddef>

#include "robustest/null_tables.hpp"
#include "robustest/outcome.hpp"
#include "robustest/rng.hpp"
#include "robustest/sample.hpp"
#include "robustest/tiebreak.hpp"

namespace robustest {

/// Order-statistic interval [D_(k), D_(l)] for the median (1-based indices).
struct MedianCi {
  std::size_t k_index = 0;
  std::size_t l_index = 0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
};

/// k = floor(n/2 - c sqrt(n)/2), l = floor(n/2 + c sqrt(n)/2), c the
/// 1 - alpha/2 normal quantile. Throws InsufficientData when k < 1.
std::pair<std::size_t, std::size_t> median_ci_indices(std::size_t n, double alpha);

MedianCi median_ci(const Sample& diffs, double alpha = 0.05);

struct MedianTestResult : TestOutcome {
  MedianCi interval;
};

/// Test of Med(D) = 0 by inversion of the order-statistic interval.
MedianTestResult mediantest(const Sample& diffs, double alpha = 0.05);
/// Paired form on D = y - x.
MedianTestResult mediantest(const PairedSample& d, double alpha = 0.05);

struct SignedRankStatistics {
  double u_n = 0.0;        ///< #{j < i : D_i + D_j > 0}
  double w_n = 0.0;        ///< sum of ranks of |D_i| over D_i > 0
  std::size_t positives = 0;
  double v_n = 0.0;        ///< (4 / (n - 1)) sum (F_n(-D_i) - mean)^2
};

/// O(n log n). Requires nonzero differences with distinct absolute values.
SignedRankStatistics signedrank_statistics(const Sample& diffs);

struct SignedRankResult : TestOutcome {
  double u_n = 0.0;
  double v_n = 0.0;
  double w_prime = 0.0;
};

/// Robust sign-and-rank test of Med(D_1 + D_2) = 0.
SignedRankResult signedrank_robust(const Sample& diffs, double alpha = 0.05,
                                   TiesBreak ties = TiesBreak::none,
                                   RngStream rng = RngStream(kTableSeed));

/// Wilcoxon signed-rank test, normal approximation.
TestOutcome signedrank_classic(const Sample& diffs, double alpha = 0.05,
                               TiesBreak ties = TiesBreak::none,
                               RngStream rng = RngStream(kTableSeed));

/// Tie policy for signed-rank statistics: zero differences and repeated
/// absolute values are the ties that matter.
Sample resolve_signed_ties(const Sample& diffs, TiesBreak policy, RngStream& rng,
                           std::vector<std::string>& notes);

}  // namespace robustest

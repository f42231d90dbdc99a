#pragma once

#include <utility>

#include "robustest/null_tables.hpp"
#include "robustest/outcome.hpp"
#include "robustest/rng.hpp"
#include "robustest/sample.hpp"
#include "robustest/tiebreak.hpp"

namespace robustest {

/// Mann-Whitney U-statistic and its two projection variances.
struct MannWhitneyStatistics {
  double count = 0.0;  ///< #{(i, j) : x_i < y_j}
  double t = 0.0;      ///< count / (n1 n2) - 1/2
  double v1 = 0.0;     ///< empirical Var(H_Y(X)), H_Y(x) = P(Y > x)
  double v2 = 0.0;     ///< empirical Var(F_X(Y)), F_X(y) = P(X < y)
};

/// Binary searches over the sorted samples, O((n1 + n2) log(n1 + n2)).
/// Indicators are strict, so tied values count as neither x < y nor y > x.
MannWhitneyStatistics mannwhitney_statistics(const Sample& x, const Sample& y);

struct TwoSampleResult : TestOutcome {
  double t = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
};

TwoSampleResult mannwhitney_robust(const Sample& x, const Sample& y,
                                   double alpha = 0.05,
                                   TiesBreak ties = TiesBreak::none,
                                   RngStream rng = RngStream(kTableSeed));

/// Wilcoxon rank-sum / Mann-Whitney with the continuity-corrected normal
/// approximation.
TestOutcome mannwhitney_classic(const Sample& x, const Sample& y,
                                double alpha = 0.05,
                                TiesBreak ties = TiesBreak::none,
                                RngStream rng = RngStream(kTableSeed));

/// Welch two-sample t test with Welch-Satterthwaite degrees of freedom.
TestOutcome welch_ttest(const Sample& x, const Sample& y, double alpha = 0.05);

/// sup_t |F_x(t) - F_y(t)| over the pooled observations.
double ks_twosample_stat(const Sample& x, const Sample& y);

/// Two-sample Kolmogorov-Smirnov with the asymptotic Kolmogorov p-value.
TestOutcome ks_twosample(const Sample& x, const Sample& y, double alpha = 0.05,
                         TiesBreak ties = TiesBreak::none,
                         RngStream rng = RngStream(kTableSeed));

/// Splits a two-level GroupedSample into (first level, second level).
std::pair<Sample, Sample> split_two_groups(const GroupedSample& g);

}  // namespace robustest

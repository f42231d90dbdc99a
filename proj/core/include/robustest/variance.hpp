#pragma once

#include <string>
#include <vector>

#include "robustest/outcome.hpp"
#include "robustest/sample.hpp"

namespace robustest {

struct GroupSummary {
  std::string level;
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
};

struct AnovaResult : TestOutcome {
  double df1 = 0.0;
  double df2 = 0.0;
  /// Upper chi-square(p - 1) tail of (p - 1) * statistic.
  double asymptotic_p_value = 1.0;
  std::vector<GroupSummary> groups;
};

/// Welch heteroscedastic one-way ANOVA; p-value from F(p - 1, df2).
AnovaResult welch_anova(const GroupedSample& g, double alpha = 0.05);

/// Equality of variances: Welch ANOVA on Z_i = (X_i - group mean)^2.
/// Group summaries carry the per-group variances of X, not of Z.
AnovaResult vartest_robust(const GroupedSample& g, double alpha = 0.05);

/// Ratio of unbiased variances against F(n1 - 1, n2 - 1), two-sided.
TestOutcome fisher_vartest(const Sample& a, const Sample& b, double alpha = 0.05);

TestOutcome bartlett_test(const GroupedSample& g, double alpha = 0.05);

/// Brown-Forsythe variant of Levene: classical ANOVA on |X_i - group median|.
TestOutcome levene_bf_test(const GroupedSample& g, double alpha = 0.05);

/// Classical (equal-variance) one-way ANOVA F statistic and its degrees of
/// freedom on already-grouped data.
struct OneWayF {
  double f = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;
};
OneWayF oneway_f(const std::vector<std::vector<double>>& groups);

}  // namespace robustest

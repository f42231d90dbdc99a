#include "robustest/variance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "robustest/distributions.hpp"
#include "robustest/errors.hpp"

namespace robustest {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

std::vector<GroupSummary> summarize(const GroupedSample& g) {
  const auto groups = g.groups();
  std::vector<GroupSummary> out;
  out.reserve(groups.size());
  for (std::size_t k = 0; k < groups.size(); ++k) {
    out.push_back({g.levels()[k], groups[k].size(), groups[k].mean(), groups[k].variance()});
  }
  return out;
}

// Welch's statistic from per-group (n, mean, variance).
AnovaResult welch_from_summaries(const std::vector<GroupSummary>& groups) {
  const double p = static_cast<double>(groups.size());
  double w_total = 0.0;
  std::vector<double> w(groups.size());
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (!(groups[k].variance > 0.0)) {
      throw DegenerateInput("group '" + groups[k].level + "' has zero variance");
    }
    w[k] = static_cast<double>(groups[k].n) / groups[k].variance;
    w_total += w[k];
  }
  double weighted_mean = 0.0;
  for (std::size_t k = 0; k < groups.size(); ++k) weighted_mean += w[k] * groups[k].mean;
  weighted_mean /= w_total;

  double between = 0.0, lambda = 0.0;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const double dev = groups[k].mean - weighted_mean;
    between += w[k] * dev * dev;
    const double h = 1.0 - w[k] / w_total;
    lambda += h * h / static_cast<double>(groups[k].n - 1);
  }
  AnovaResult out;
  out.statistic_name = "F";
  out.statistic = (between / (p - 1.0)) / (1.0 + 2.0 * (p - 2.0) * lambda / (p * p - 1.0));
  out.df1 = p - 1.0;
  out.df2 = (p * p - 1.0) / (3.0 * lambda);
  out.p_value = clamp_probability(dist::f_sf(out.statistic, out.df1, out.df2));
  out.asymptotic_p_value = clamp_probability(dist::chisq_sf((p - 1.0) * out.statistic, p - 1.0));
  out.groups = groups;
  return out;
}

}  // namespace

OneWayF oneway_f(const std::vector<std::vector<double>>& groups) {
  std::size_t total = 0;
  double grand = 0.0;
  for (const auto& g : groups) {
    total += g.size();
    grand += std::accumulate(g.begin(), g.end(), 0.0);
  }
  grand /= static_cast<double>(total);
  double between = 0.0, within = 0.0;
  for (const auto& g : groups) {
    const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
    between += static_cast<double>(g.size()) * (mean - grand) * (mean - grand);
    for (double v : g) within += (v - mean) * (v - mean);
  }
  OneWayF f;
  f.df1 = static_cast<double>(groups.size() - 1);
  f.df2 = static_cast<double>(total - groups.size());
  if (!(within > 0.0)) throw DegenerateInput("within-group sum of squares is zero");
  f.f = (between / f.df1) / (within / f.df2);
  return f;
}

AnovaResult welch_anova(const GroupedSample& g, double alpha) {
  check_alpha(alpha);
  AnovaResult out = welch_from_summaries(summarize(g));
  out.method = "One-way analysis of means (not assuming equal variances)";
  out.alternative = "the group means are not all equal";
  out.n_info = g.group_counts();
  return out;
}

AnovaResult vartest_robust(const GroupedSample& g, double alpha) {
  check_alpha(alpha);
  for (std::size_t k = 0; k < g.level_count(); ++k) {
    if (g.group_counts()[k] < 3) {
      throw InsufficientData("robust variance test needs at least 3 observations in level '" +
                             g.levels()[k] + "'");
    }
  }
  const auto x_summary = summarize(g);
  std::vector<double> z(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double dev = g.values()[i] - x_summary[g.level_index()[i]].mean;
    z[i] = dev * dev;
  }
  const GroupedSample zg(std::move(z), g.labels());
  AnovaResult out;
  try {
    out = welch_from_summaries(summarize(zg));
  } catch (const DegenerateInput&) {
    throw DegenerateInput("squared deviations are constant within a group; variance test undefined");
  }
  out.method = "Robust test of equality of variances (Welch ANOVA on squared deviations)";
  out.alternative = "the group variances are not all equal";
  out.n_info = g.group_counts();
  out.groups = x_summary;
  if (x_summary.size() == 2) {
    out.estimate = x_summary[0].variance / x_summary[1].variance;
    out.estimate_name = "ratio of variances";
  }
  return out;
}

TestOutcome fisher_vartest(const Sample& a, const Sample& b, double alpha) {
  check_alpha(alpha);
  if (a.size() < 2 || b.size() < 2) throw InsufficientData("F test needs at least 2 values per sample");
  const double va = a.variance(), vb = b.variance();
  if (!(va > 0.0) || !(vb > 0.0)) throw DegenerateInput("F test needs positive variances");
  const double df1 = static_cast<double>(a.size() - 1), df2 = static_cast<double>(b.size() - 1);
  TestOutcome out;
  out.method = "F test to compare two variances";
  out.statistic_name = "F";
  out.statistic = va / vb;
  const double lower = dist::f_cdf(out.statistic, df1, df2);
  out.p_value = clamp_probability(2.0 * std::min(lower, dist::f_sf(out.statistic, df1, df2)));
  out.estimate = out.statistic;
  out.estimate_name = "ratio of variances";
  out.ci = ConfidenceInterval{out.statistic / dist::f_quantile(1.0 - alpha / 2.0, df1, df2),
                              out.statistic / dist::f_quantile(alpha / 2.0, df1, df2), 1.0 - alpha};
  out.alternative = "true ratio of variances is not equal to 1";
  out.n_info = {a.size(), b.size()};
  return out;
}

TestOutcome bartlett_test(const GroupedSample& g, double alpha) {
  check_alpha(alpha);
  const auto groups = summarize(g);
  const double p = static_cast<double>(groups.size());
  double total = 0.0, pooled = 0.0, log_sum = 0.0, inv_sum = 0.0;
  for (const auto& s : groups) {
    if (!(s.variance > 0.0)) throw DegenerateInput("group '" + s.level + "' has zero variance");
    const double dof = static_cast<double>(s.n - 1);
    total += static_cast<double>(s.n);
    pooled += dof * s.variance;
    log_sum += dof * std::log(s.variance);
    inv_sum += 1.0 / dof;
  }
  pooled /= (total - p);
  const double c = 1.0 + (inv_sum - 1.0 / (total - p)) / (3.0 * (p - 1.0));
  TestOutcome out;
  out.method = "Bartlett test of homogeneity of variances";
  out.statistic_name = "K-squared";
  out.statistic = std::max(0.0, ((total - p) * std::log(pooled) - log_sum) / c);
  out.p_value = clamp_probability(dist::chisq_sf(out.statistic, p - 1.0));
  out.alternative = "the group variances are not all equal";
  out.n_info = g.group_counts();
  return out;
}

TestOutcome levene_bf_test(const GroupedSample& g, double alpha) {
  check_alpha(alpha);
  const auto groups = g.groups();
  std::vector<std::vector<double>> deviations;
  deviations.reserve(groups.size());
  for (const auto& s : groups) {
    const double med = s.median();
    std::vector<double> dev;
    dev.reserve(s.size());
    for (double v : s) dev.push_back(std::fabs(v - med));
    deviations.push_back(std::move(dev));
  }
  const bool all_zero = std::all_of(deviations.begin(), deviations.end(), [](const auto& dv) {
    return std::all_of(dv.begin(), dv.end(), [](double v) { return v == 0.0; });
  });
  if (all_zero) throw DegenerateInput("all absolute deviations from the group medians are zero");
  const OneWayF f = oneway_f(deviations);
  TestOutcome out;
  out.method = "Levene's test (Brown-Forsythe, deviations from medians)";
  out.statistic_name = "F";
  out.statistic = f.f;
  out.p_value = clamp_probability(dist::f_sf(f.f, f.df1, f.df2));
  out.alternative = "the mean absolute deviations are not all equal";
  out.n_info = g.group_counts();
  return out;
}

}  // namespace robustest

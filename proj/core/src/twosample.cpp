#include "robustest/twosample.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "robustest/distributions.hpp"
#include "robustest/errors.hpp"

namespace robustest {
namespace {

constexpr const char* kShiftAlternative = "true location shift is not equal to 0";

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

void require_sizes(const Sample& x, const Sample& y, std::size_t min_n, const char* test) {
  if (x.size() < min_n || y.size() < min_n) {
    throw InsufficientData(std::string(test) + " needs at least " + std::to_string(min_n) +
                           " observations per sample");
  }
}

// Ties across the pooled sample are broken jointly so the relative order of
// x and y values is randomized, then the pooled values are split back.
std::pair<Sample, Sample> pooled_tie_policy(const Sample& x, const Sample& y, TiesBreak ties,
                                            RngStream& rng, std::vector<std::string>& notes) {
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const Sample resolved = resolve_ties(Sample(std::move(pooled)), ties, rng, "the pooled sample", notes);
  const auto v = resolved.values();
  return {Sample(std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(x.size()))),
          Sample(std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(x.size()), v.end()))};
}

double variance_of(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double e : v) ss += (e - mean) * (e - mean);
  return ss / (n - 1.0);
}

}  // namespace

MannWhitneyStatistics mannwhitney_statistics(const Sample& x, const Sample& y) {
  require_sizes(x, y, 2, "Mann-Whitney statistic");
  const std::vector<double> xs = x.sorted(), ys = y.sorted();
  const double n1 = static_cast<double>(x.size()), n2 = static_cast<double>(y.size());

  // H_{n2}(x_k) = #{y > x_k} / n2
  std::vector<double> h(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto above = ys.end() - std::upper_bound(ys.begin(), ys.end(), x[k]);
    h[k] = static_cast<double>(above) / n2;
  }
  // F_{n1}(y_k) = #{x < y_k} / n1
  std::vector<double> f(y.size());
  std::uint64_t count = 0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const auto below = std::lower_bound(xs.begin(), xs.end(), y[k]) - xs.begin();
    count += static_cast<std::uint64_t>(below);
    f[k] = static_cast<double>(below) / n1;
  }

  MannWhitneyStatistics s;
  s.count = static_cast<double>(count);
  s.t = s.count / (n1 * n2) - 0.5;
  s.v1 = variance_of(h);
  s.v2 = variance_of(f);
  return s;
}

TwoSampleResult mannwhitney_robust(const Sample& x, const Sample& y, double alpha, TiesBreak ties,
                                   RngStream rng) {
  check_alpha(alpha);
  require_sizes(x, y, 2, "robust Mann-Whitney test");
  TwoSampleResult out;
  const auto [cx, cy] = pooled_tie_policy(x, y, ties, rng, out.notes);
  const MannWhitneyStatistics s = mannwhitney_statistics(cx, cy);
  const double n1 = static_cast<double>(x.size()), n2 = static_cast<double>(y.size());
  out.method = "Corrected Mann-Whitney test";
  out.statistic_name = "z";
  out.t = s.t;
  out.v1 = s.v1;
  out.v2 = s.v2;
  out.estimate = s.t;
  out.estimate_name = "P(X<Y) - 0.5";
  out.alternative = "P(X<Y) is not equal to 0.5";
  out.n_info = {x.size(), y.size()};
  const double se2 = s.v1 / n1 + s.v2 / n2;
  if (se2 > 0.0) {
    out.statistic = s.t / std::sqrt(se2);
    out.p_value = dist::two_sided_normal_p(out.statistic);
    const double half = dist::norm_quantile(1.0 - alpha / 2.0) * std::sqrt(se2);
    out.ci = ConfidenceInterval{std::max(-0.5, s.t - half), std::min(0.5, s.t + half), 1.0 - alpha};
  } else if (s.t != 0.0) {
    out.statistic = s.t > 0 ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
    out.p_value = 0.0;
    out.ci = ConfidenceInterval{s.t, s.t, 1.0 - alpha};
    out.notes.push_back("samples are completely separated; p-value reported as 0");
  } else {
    out.statistic = 0.0;
    out.p_value = 1.0;
    out.notes.push_back("zero variance estimate");
  }
  out.notes.push_back("estimated P(X<Y) = " + std::to_string(s.t + 0.5));
  return out;
}

TestOutcome mannwhitney_classic(const Sample& x, const Sample& y, double alpha, TiesBreak ties,
                                RngStream rng) {
  check_alpha(alpha);
  require_sizes(x, y, 2, "Mann-Whitney test");
  TestOutcome out;
  const auto [cx, cy] = pooled_tie_policy(x, y, ties, rng, out.notes);
  const MannWhitneyStatistics s = mannwhitney_statistics(cx, cy);
  const double n1 = static_cast<double>(x.size()), n2 = static_cast<double>(y.size());
  const double mean = n1 * n2 / 2.0;
  const double sd = std::sqrt(n1 * n2 * (n1 + n2 + 1.0) / 12.0);
  const double centered = s.count - mean;
  const double corrected =
      centered > 0 ? std::max(0.0, centered - 0.5) : std::min(0.0, centered + 0.5);
  out.method = "Wilcoxon rank sum test with continuity correction";
  out.statistic_name = "W";
  out.statistic = s.count;
  out.p_value = dist::two_sided_normal_p(corrected / sd);
  out.estimate = s.t;
  out.estimate_name = "P(X<Y) - 0.5";
  out.alternative = kShiftAlternative;
  out.n_info = {x.size(), y.size()};
  out.notes.push_back("W counts pairs with x < y; normal approximation");
  return out;
}

TestOutcome welch_ttest(const Sample& x, const Sample& y, double alpha) {
  check_alpha(alpha);
  require_sizes(x, y, 2, "Welch t test");
  const double n1 = static_cast<double>(x.size()), n2 = static_cast<double>(y.size());
  const double v1 = x.variance() / n1, v2 = y.variance() / n2;
  if (!(v1 + v2 > 0.0)) throw DegenerateInput("both samples have zero variance");
  const double se = std::sqrt(v1 + v2);
  const double diff = x.mean() - y.mean();
  const double df = (v1 + v2) * (v1 + v2) / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0));
  TestOutcome out;
  out.method = "Welch Two Sample t-test";
  out.statistic_name = "t";
  out.statistic = diff / se;
  out.p_value = dist::two_sided_t_p(out.statistic, df);
  out.estimate = diff;
  out.estimate_name = "difference in means";
  const double half = dist::t_quantile(1.0 - alpha / 2.0, df) * se;
  out.ci = ConfidenceInterval{diff - half, diff + half, 1.0 - alpha};
  out.alternative = "true difference in means is not equal to 0";
  out.n_info = {x.size(), y.size()};
  out.notes.push_back("df = " + std::to_string(df));
  return out;
}

double ks_twosample_stat(const Sample& x, const Sample& y) {
  const std::vector<double> xs = x.sorted(), ys = y.sorted();
  const auto n1 = static_cast<std::int64_t>(xs.size()), n2 = static_cast<std::int64_t>(ys.size());
  // Integer form: n1 n2 |F - G| = |n2 #{x <= t} - n1 #{y <= t}|.
  std::int64_t best = 0;
  std::size_t i = 0, j = 0;
  while (i < xs.size() || j < ys.size()) {
    double t;
    if (j >= ys.size() || (i < xs.size() && xs[i] <= ys[j])) {
      t = xs[i];
    } else {
      t = ys[j];
    }
    while (i < xs.size() && xs[i] <= t) ++i;
    while (j < ys.size() && ys[j] <= t) ++j;
    const std::int64_t diff = n2 * static_cast<std::int64_t>(i) - n1 * static_cast<std::int64_t>(j);
    best = std::max(best, diff < 0 ? -diff : diff);
  }
  return static_cast<double>(best) / (static_cast<double>(n1) * static_cast<double>(n2));
}

TestOutcome ks_twosample(const Sample& x, const Sample& y, double alpha, TiesBreak ties,
                         RngStream rng) {
  check_alpha(alpha);
  TestOutcome out;
  const auto [cx, cy] = pooled_tie_policy(x, y, ties, rng, out.notes);
  const double n1 = static_cast<double>(x.size()), n2 = static_cast<double>(y.size());
  out.method = "Two-sample Kolmogorov-Smirnov test";
  out.statistic_name = "D";
  out.statistic = ks_twosample_stat(cx, cy);
  out.p_value = dist::kolmogorov_sf(std::sqrt(n1 * n2 / (n1 + n2)) * out.statistic);
  out.alternative = "the two distributions differ";
  out.n_info = {x.size(), y.size()};
  out.notes.push_back("asymptotic Kolmogorov p-value");
  return out;
}

std::pair<Sample, Sample> split_two_groups(const GroupedSample& g) {
  if (g.level_count() != 2) {
    throw DomainError("expected exactly 2 levels, got " + std::to_string(g.level_count()));
  }
  auto groups = g.groups();
  return {std::move(groups[0]), std::move(groups[1])};
}

}  // namespace robustest

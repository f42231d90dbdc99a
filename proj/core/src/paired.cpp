#include "robustest/paired.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "robustest/distributions.hpp"
#include "robustest/errors.hpp"
#include "robustest/ranks.hpp"
#include "robustest/variates.hpp"

namespace robustest {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

// Raw (unclamped) floor arguments of the index formula.
std::pair<double, double> index_arguments(std::size_t n, double alpha) {
  const double c = dist::norm_quantile(1.0 - alpha / 2.0);
  const double half = static_cast<double>(n) / 2.0;
  const double spread = c * std::sqrt(static_cast<double>(n)) / 2.0;
  return {half - spread, half + spread};
}

// Interval at level 1 - a with indices clamped into [1, n]; used only to scan
// the family of intervals for the p-value.
std::pair<double, double> clamped_interval(const std::vector<double>& sorted, double a) {
  const std::size_t n = sorted.size();
  const auto [lo, hi] = index_arguments(n, a);
  const double k = std::clamp(std::floor(lo), 1.0, static_cast<double>(n));
  const double l = std::clamp(std::floor(hi), k, static_cast<double>(n));
  return {sorted[static_cast<std::size_t>(k) - 1], sorted[static_cast<std::size_t>(l) - 1]};
}

void require_signed_size(const Sample& diffs) {
  if (diffs.size() < 4) throw InsufficientData("signed-rank tests need at least 4 differences");
}

}  // namespace

std::pair<std::size_t, std::size_t> median_ci_indices(std::size_t n, double alpha) {
  check_alpha(alpha);
  const auto [lo, hi] = index_arguments(n, alpha);
  if (!(lo >= 1.0)) {
    throw InsufficientData("median interval needs k >= 1: n = " + std::to_string(n) +
                           " is too small at alpha = " + std::to_string(alpha));
  }
  const auto k = static_cast<std::size_t>(std::floor(lo));
  const auto l = std::min(n, static_cast<std::size_t>(std::floor(hi)));
  return {k, l};
}

MedianCi median_ci(const Sample& diffs, double alpha) {
  const auto [k, l] = median_ci_indices(diffs.size(), alpha);
  const std::vector<double> s = diffs.sorted();
  return MedianCi{k, l, s[k - 1], s[l - 1], 1.0 - alpha};
}

MedianTestResult mediantest(const Sample& diffs, double alpha) {
  MedianTestResult out;
  out.interval = median_ci(diffs, alpha);
  const std::vector<double> s = diffs.sorted();

  // Intervals shrink as the level drops, so the first grid point that
  // excludes zero is the p-value.
  out.p_value = 1.0;
  for (int step = 1; step <= 999; ++step) {
    const double a = step / 1000.0;
    const auto [lower, upper] = clamped_interval(s, a);
    if (lower > 0.0 || upper < 0.0) {
      out.p_value = a;
      break;
    }
  }
  out.method = "Median test based on order statistics";
  out.statistic_name = "median";
  out.statistic = diffs.median();
  out.estimate = diffs.median();
  out.estimate_name = "median of the differences";
  out.ci = ConfidenceInterval{out.interval.lower, out.interval.upper, out.interval.level};
  out.alternative = "true median is not equal to 0";
  out.n_info = {diffs.size()};
  out.notes.push_back("interval [D(" + std::to_string(out.interval.k_index) + "), D(" +
                      std::to_string(out.interval.l_index) + ")]");
  out.notes.push_back("p-value by inversion on a 0.001 grid");
  return out;
}

MedianTestResult mediantest(const PairedSample& d, double alpha) {
  return mediantest(d.differences(), alpha);
}

SignedRankStatistics signedrank_statistics(const Sample& diffs) {
  const std::size_t n = diffs.size();
  if (n < 2) throw InsufficientData("signed-rank statistics need at least 2 differences");
  const std::vector<double> s = diffs.sorted();

  // u_n: pairs i < j of the sorted values with s_i + s_j > 0.
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto first = std::upper_bound(s.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.end(), -s[i]);
    pairs += static_cast<std::uint64_t>(s.end() - first);
  }

  // F_n(-D_i) = #{j : D_j <= -D_i} / n
  const double nd = static_cast<double>(n);
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = static_cast<double>(std::upper_bound(s.begin(), s.end(), -diffs[i]) - s.begin()) / nd;
  }
  const double fbar = std::accumulate(f.begin(), f.end(), 0.0) / nd;
  double ss = 0.0;
  for (double v : f) ss += (v - fbar) * (v - fbar);

  std::vector<double> absolute(n);
  for (std::size_t i = 0; i < n; ++i) absolute[i] = std::abs(diffs[i]);
  const std::vector<double> r = ranks(Sample(std::move(absolute)));

  SignedRankStatistics out;
  out.u_n = static_cast<double>(pairs);
  for (std::size_t i = 0; i < n; ++i) {
    if (diffs[i] > 0.0) {
      out.w_n += r[i];
      ++out.positives;
    }
  }
  out.v_n = 4.0 * ss / (nd - 1.0);
  return out;
}

Sample resolve_signed_ties(const Sample& diffs, TiesBreak policy, RngStream& rng,
                           std::vector<std::string>& notes) {
  std::vector<double> absolute(diffs.size());
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    absolute[i] = std::abs(diffs[i]);
    if (diffs[i] == 0.0) ++zeros;
  }
  const TieReport report = has_ties(Sample(absolute));
  if (zeros == 0 && !report.has_ties) return diffs;
  if (policy == TiesBreak::none) {
    if (zeros > 0) {
      throw TieError(std::to_string(zeros) +
                     " zero difference(s); rerun with ties broken at random");
    }
    throw TieError("tied absolute differences: " + report.description +
                   "; rerun with ties broken at random");
  }

  // Zeros become small positive magnitudes below every nonzero |D|, then the
  // remaining ties among magnitudes are broken; zeros get a random sign.
  double smallest = std::numeric_limits<double>::infinity();
  for (double a : absolute) {
    if (a > 0.0) smallest = std::min(smallest, a);
  }
  if (!std::isfinite(smallest)) smallest = 1.0;
  RngStream zero_rng = rng.split(11);
  for (double& a : absolute) {
    if (a == 0.0) a = dist::uniform(zero_rng, 0.0, smallest / 2.0);
  }
  RngStream mag_rng = rng.split(12);
  const TiebreakResult broken = tiebreak(Sample(absolute), mag_rng);
  RngStream sign_rng = rng.split(13);
  std::vector<double> out(diffs.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    double sign = diffs[i] > 0.0 ? 1.0 : -1.0;
    if (diffs[i] == 0.0) sign = dist::bernoulli(sign_rng, 0.5) ? 1.0 : -1.0;
    out[i] = sign * broken.sample[i];
  }
  if (zeros > 0) notes.push_back(std::to_string(zeros) + " zero difference(s) given random signs");
  if (report.has_ties) notes.push_back("tied absolute differences broken at random");
  return Sample(std::move(out));
}

SignedRankResult signedrank_robust(const Sample& diffs, double alpha, TiesBreak ties, RngStream rng) {
  check_alpha(alpha);
  require_signed_size(diffs);
  SignedRankResult out;
  const Sample d = resolve_signed_ties(diffs, ties, rng, out.notes);
  const SignedRankStatistics s = signedrank_statistics(d);
  const double n = static_cast<double>(d.size());
  const double concordance = 2.0 * s.u_n / (n * (n - 1.0));
  out.method = "Corrected Wilcoxon signed rank test";
  out.statistic_name = "z";
  out.u_n = s.u_n;
  out.v_n = s.v_n;
  out.estimate = concordance;
  out.estimate_name = "P(D1 + D2 > 0)";
  out.alternative = "true median of D1 + D2 is not equal to 0";
  out.n_info = {d.size()};
  if (s.v_n > 0.0) {
    out.w_prime = std::sqrt(n) * (concordance - 0.5) / std::sqrt(s.v_n);
    out.statistic = out.w_prime;
    out.p_value = dist::two_sided_normal_p(out.statistic);
    const double half = dist::norm_quantile(1.0 - alpha / 2.0) * std::sqrt(s.v_n / n);
    out.ci = ConfidenceInterval{std::max(0.0, concordance - half), std::min(1.0, concordance + half),
                                1.0 - alpha};
  } else {
    const double sign = concordance > 0.5 ? 1.0 : (concordance < 0.5 ? -1.0 : 0.0);
    out.w_prime = sign * std::numeric_limits<double>::infinity();
    if (sign == 0.0) out.w_prime = 0.0;
    out.statistic = out.w_prime;
    out.p_value = sign == 0.0 ? 1.0 : 0.0;
    out.notes.push_back("all differences share one sign; p-value reported as 0");
  }
  return out;
}

TestOutcome signedrank_classic(const Sample& diffs, double alpha, TiesBreak ties, RngStream rng) {
  check_alpha(alpha);
  require_signed_size(diffs);
  TestOutcome out;
  const Sample d = resolve_signed_ties(diffs, ties, rng, out.notes);
  const SignedRankStatistics s = signedrank_statistics(d);
  const double n = static_cast<double>(d.size());
  const double mean = n * (n + 1.0) / 4.0;
  const double sd = std::sqrt(n * (n + 1.0) * (2.0 * n + 1.0) / 24.0);
  out.method = "Wilcoxon signed rank test";
  out.statistic_name = "z";
  out.statistic = (s.w_n - mean) / sd;
  out.p_value = dist::two_sided_normal_p(out.statistic);
  out.estimate = s.w_n;
  out.estimate_name = "V";
  out.alternative = "true location is not equal to 0";
  out.n_info = {d.size()};
  out.notes.push_back("normal approximation");
  return out;
}

}  // namespace robustest

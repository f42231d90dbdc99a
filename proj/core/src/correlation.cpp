#include "robustest/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "robustest/distributions.hpp"
#include "robustest/errors.hpp"
#include "robustest/ranks.hpp"

namespace robustest {
namespace {

constexpr const char* kCorAlternative = "true correlation is not equal to 0";

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

void require_size(const PairedSample& d, std::size_t min_n, const char* test) {
  if (d.size() < min_n) {
    throw InsufficientData(std::string(test) + " needs at least " + std::to_string(min_n) +
                           " pairs, got " + std::to_string(d.size()));
  }
}

void require_nonconstant(const PairedSample& d) {
  if (d.x().min() == d.x().max()) throw DegenerateInput("x margin is constant");
  if (d.y().min() == d.y().max()) throw DegenerateInput("y margin is constant");
}

ConfidenceInterval clamped_ci(double center, double half_width, double alpha) {
  return {std::max(-1.0, center - half_width), std::min(1.0, center + half_width), 1.0 - alpha};
}

// 0-based ranks of a tie-free sample.
std::vector<std::size_t> order_ranks(const Sample& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;
  return rank;
}

// Counts inversions of v in place (merge sort).
std::uint64_t count_inversions(std::vector<std::size_t>& v, std::vector<std::size_t>& buf,
                               std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      inv += mid - i;
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Number of inserted indices < i.
  std::size_t prefix(std::size_t i) const {
    std::size_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::size_t> tree_;
};

double sample_variance(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / (n - 1.0);
}

PairedSample tie_free_pairs(const PairedSample& d, TiesBreak ties, RngStream& rng,
                            std::vector<std::string>& notes) {
  RngStream rx = rng.split(1);
  RngStream ry = rng.split(2);
  Sample x = resolve_ties(d.x(), ties, rx, "x", notes);
  Sample y = resolve_ties(d.y(), ties, ry, "y", notes);
  return PairedSample(std::move(x), std::move(y));
}

// Fills the degenerate-variance branch shared by the rank tests.
void perfect_association(CorrelationResult& r, double direction, const char* what) {
  if (direction == 0.0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    r.notes.push_back(std::string("zero variance estimate with zero ") + what);
    return;
  }
  r.statistic = direction > 0 ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
  r.p_value = 0.0;
  r.notes.push_back(std::string("perfect ") + what + "; p-value reported as 0");
}

}  // namespace

KendallStatistics kendall_statistics(const PairedSample& d) {
  require_no_ties(d.x(), "x");
  require_no_ties(d.y(), "y");
  const std::size_t n = d.size();
  const auto rx = order_ranks(d.x());
  const auto ry = order_ranks(d.y());

  // y ranks listed in increasing x order.
  std::vector<std::size_t> by_x(n);
  for (std::size_t i = 0; i < n; ++i) by_x[rx[i]] = ry[i];

  std::vector<std::size_t> work = by_x, buf(n);
  const std::uint64_t discordant = count_inversions(work, buf, 0, n);
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t concordant = pairs - discordant;

  // F count: points below-left; H count by inclusion-exclusion.
  std::vector<std::size_t> lower_left(n);
  Fenwick fen(n);
  for (std::size_t r = 0; r < n; ++r) {
    lower_left[r] = fen.prefix(by_x[r]);
    fen.add(by_x[r]);
  }
  std::vector<double> s(n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t f = lower_left[rx[i]];
    const std::size_t h = (n - 1) + f - rx[i] - ry[i];
    s[i] = static_cast<double>(f + h) / nd;
  }

  KendallStatistics k;
  k.concordant = static_cast<double>(concordant);
  k.discordant = static_cast<double>(discordant);
  k.t_n = 2.0 * k.concordant / (nd * (nd - 1.0)) - 0.5;
  k.tau = 2.0 * k.t_n;
  k.v_n = 4.0 * sample_variance(s);
  return k;
}

SpearmanStatistics spearman_statistics(const PairedSample& d) {
  require_no_ties(d.x(), "x");
  require_no_ties(d.y(), "y");
  const std::size_t n = d.size();
  const auto rx = order_ranks(d.x());
  const auto ry = order_ranks(d.y());
  const double nd = static_cast<double>(n);

  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = static_cast<double>(rx[i]) - static_cast<double>(ry[i]);
    d2 += diff * diff;
  }

  // Suffix sums of the other margin's (1-based) ranks, in each margin's order.
  std::vector<std::uint64_t> y_by_x(n), x_by_y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y_by_x[rx[i]] = ry[i] + 1;
    x_by_y[ry[i]] = rx[i] + 1;
  }
  std::vector<std::uint64_t> suffix_y(n + 1, 0), suffix_x(n + 1, 0);
  for (std::size_t r = n; r-- > 0;) {
    suffix_y[r] = suffix_y[r + 1] + y_by_x[r];
    suffix_x[r] = suffix_x[r + 1] + x_by_y[r];
  }
  std::vector<double> psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double fx = static_cast<double>(rx[i] + 1) / nd;
    const double fy = static_cast<double>(ry[i] + 1) / nd;
    const double g1 = static_cast<double>(suffix_y[rx[i]]) / (nd * nd);
    const double g2 = static_cast<double>(suffix_x[ry[i]]) / (nd * nd);
    psi[i] = fx * fy + g1 + g2;
  }

  SpearmanStatistics s;
  s.rho = 1.0 - 6.0 * d2 / (nd * (nd * nd - 1.0));
  s.v_n = 144.0 * sample_variance(psi);
  return s;
}

CorrelationResult pearson_classic(const PairedSample& d, double alpha) {
  check_alpha(alpha);
  require_size(d, 3, "Pearson test");
  require_nonconstant(d);
  const std::size_t n = d.size();
  const double mx = d.x().mean(), my = d.y().mean();
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = d.x()[i] - mx, b = d.y()[i] - my;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(n - 2);

  CorrelationResult out;
  out.method = "Pearson's product-moment correlation";
  out.statistic_name = "t";
  out.estimate = r;
  out.estimate_name = "cor";
  out.alternative = kCorAlternative;
  out.n_info = {n};
  if (1.0 - r * r <= 0.0) {
    out.statistic = r > 0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
    out.p_value = 0.0;
    out.ci = ConfidenceInterval{r, r, 1.0 - alpha};
    out.notes.push_back("perfect correlation; p-value reported as 0");
    return out;
  }
  out.statistic = r * std::sqrt(df / (1.0 - r * r));
  out.p_value = dist::two_sided_t_p(out.statistic, df);
  if (n > 3) {
    const double z = std::atanh(r);
    const double half = dist::norm_quantile(1.0 - alpha / 2.0) / std::sqrt(static_cast<double>(n - 3));
    out.ci = ConfidenceInterval{std::tanh(z - half), std::tanh(z + half), 1.0 - alpha};
  }
  return out;
}

CorrelationResult pearson_robust(const PairedSample& d, double alpha) {
  check_alpha(alpha);
  require_size(d, 3, "robust Pearson test");
  require_nonconstant(d);
  const std::size_t n = d.size();
  const double nd = static_cast<double>(n);
  const double mx = d.x().mean(), my = d.y().mean();

  std::vector<double> a(n), b(n), z(n);
  double sum_z = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = d.x()[i] - mx;
    b[i] = d.y()[i] - my;
    z[i] = a[i] * b[i];
    sum_z += z[i];
    sxx += a[i] * a[i];
    syy += b[i] * b[i];
  }
  const double zbar = sum_z / nd;
  double ss_z = 0.0;
  for (double zi : z) ss_z += (zi - zbar) * (zi - zbar);
  if (!(ss_z > 0.0)) throw DegenerateInput("all centered cross-products are equal");

  CorrelationResult out;
  out.method = "Corrected Pearson correlation test";
  out.statistic_name = "t";
  out.statistic = sum_z / std::sqrt(ss_z);
  out.p_value = clamp_probability(pearson_null_pvalue(n, out.statistic));
  const double r = std::clamp(sum_z / std::sqrt(sxx * syy), -1.0, 1.0);
  out.estimate = r;
  out.estimate_name = "cor";
  out.alternative = kCorAlternative;
  out.n_info = {n};
  out.variance_estimate = ss_z / nd;
  if (n >= kPearsonTableLimit) {
    out.notes.push_back("calibrated with Student t(" + std::to_string(n - 2) + ")");
  } else {
    out.notes.push_back("calibrated with the simulated Gaussian null table for n = " +
                        std::to_string(n));
  }

  // Delta method for rho = h(cov, var_x, var_y) = cov / sqrt(var_x var_y),
  // with the empirical covariance of (a b, a^2, b^2).
  const double c = zbar, vx = sxx / nd, vy = syy / nd;
  const double g[3] = {1.0 / std::sqrt(vx * vy), -r / (2.0 * vx), -r / (2.0 * vy)};
  double m[3] = {c, vx, vy};
  double cov[3][3] = {};
  for (std::size_t i = 0; i < n; ++i) {
    const double w[3] = {z[i] - m[0], a[i] * a[i] - m[1], b[i] * b[i] - m[2]};
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) cov[p][q] += w[p] * w[q];
  }
  double var_r = 0.0;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) var_r += g[p] * cov[p][q] / nd * g[q];
  var_r = std::max(var_r, 0.0) / nd;
  out.ci = clamped_ci(r, dist::norm_quantile(1.0 - alpha / 2.0) * std::sqrt(var_r), alpha);
  return out;
}

CorrelationResult kendall_classic(const PairedSample& d, double alpha, TiesBreak ties,
                                  RngStream rng) {
  check_alpha(alpha);
  require_size(d, 3, "Kendall test");
  CorrelationResult out;
  const PairedSample clean = tie_free_pairs(d, ties, rng, out.notes);
  const KendallStatistics k = kendall_statistics(clean);
  const double nd = static_cast<double>(d.size());
  const double null_var = 2.0 * (2.0 * nd + 5.0) / (9.0 * nd * (nd - 1.0));
  out.method = "Kendall's rank correlation tau";
  out.statistic_name = "z";
  out.statistic = k.tau / std::sqrt(null_var);
  out.p_value = dist::two_sided_normal_p(out.statistic);
  out.estimate = k.tau;
  out.estimate_name = "tau";
  out.alternative = "true tau is not equal to 0";
  out.n_info = {d.size()};
  return out;
}

CorrelationResult kendall_robust(const PairedSample& d, double alpha, TiesBreak ties,
                                 RngStream rng) {
  check_alpha(alpha);
  require_size(d, 3, "robust Kendall test");
  CorrelationResult out;
  const PairedSample clean = tie_free_pairs(d, ties, rng, out.notes);
  const KendallStatistics k = kendall_statistics(clean);
  const double nd = static_cast<double>(d.size());
  out.method = "Corrected Kendall correlation test";
  out.statistic_name = "z";
  out.estimate = k.tau;
  out.estimate_name = "tau";
  out.alternative = "true tau is not equal to 0";
  out.n_info = {d.size()};
  out.variance_estimate = k.v_n;
  if (k.v_n > 0.0) {
    out.statistic = std::sqrt(nd) * k.t_n / std::sqrt(k.v_n);
    out.p_value = dist::two_sided_normal_p(out.statistic);
  } else {
    perfect_association(out, k.t_n, "concordance");
  }
  const double half = dist::norm_quantile(1.0 - alpha / 2.0) * 2.0 * std::sqrt(k.v_n / nd);
  out.ci = clamped_ci(k.tau, half, alpha);
  return out;
}

CorrelationResult spearman_classic(const PairedSample& d, double alpha, TiesBreak ties,
                                   RngStream rng) {
  check_alpha(alpha);
  require_size(d, 3, "Spearman test");
  CorrelationResult out;
  const PairedSample clean = tie_free_pairs(d, ties, rng, out.notes);
  const double rho = spearman_statistics(clean).rho;
  const double df = static_cast<double>(d.size() - 2);
  out.method = "Spearman's rank correlation rho";
  out.statistic_name = "t";
  out.estimate = rho;
  out.estimate_name = "rho";
  out.alternative = "true rho is not equal to 0";
  out.n_info = {d.size()};
  if (1.0 - rho * rho <= 0.0) {
    perfect_association(out, rho, "rank correlation");
    return out;
  }
  out.statistic = rho * std::sqrt(df / (1.0 - rho * rho));
  out.p_value = dist::two_sided_t_p(out.statistic, df);
  return out;
}

CorrelationResult spearman_robust(const PairedSample& d, double alpha, TiesBreak ties,
                                  RngStream rng) {
  check_alpha(alpha);
  require_size(d, 4, "robust Spearman test");
  CorrelationResult out;
  const PairedSample clean = tie_free_pairs(d, ties, rng, out.notes);
  const SpearmanStatistics s = spearman_statistics(clean);
  const double nd = static_cast<double>(d.size());
  out.method = "Corrected Spearman correlation test";
  out.statistic_name = "z";
  out.estimate = s.rho;
  out.estimate_name = "rho";
  out.alternative = "true rho is not equal to 0";
  out.n_info = {d.size()};
  out.variance_estimate = s.v_n;
  if (s.v_n > 0.0) {
    out.statistic = std::sqrt(nd) * s.rho / std::sqrt(s.v_n);
    out.p_value = dist::two_sided_normal_p(out.statistic);
  } else {
    perfect_association(out, s.rho, "rank correlation");
  }
  const double half = dist::norm_quantile(1.0 - alpha / 2.0) * std::sqrt(s.v_n / nd);
  out.ci = clamped_ci(s.rho, half, alpha);
  return out;
}

}  // namespace robustest

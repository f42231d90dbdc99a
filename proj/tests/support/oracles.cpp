#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracle {
namespace {

double sample_var(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double s = 0.0;
  for (double e : v) s += (e - m) * (e - m);
  return s / (n - 1.0);
}

}  // namespace

Kendall kendall(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  std::int64_t conc = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool c = (x[i] - x[j]) * (y[i] - y[j]) > 0;
      sum += (c ? 1.0 : 0.0) - 0.5;
      if (c && i < j) ++conc;
    }
  }
  std::vector<double> fh(n);
  for (std::size_t k = 0; k < n; ++k) {
    int f = 0, h = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] < x[k] && y[j] < y[k]) ++f;
      if (x[j] > x[k] && y[j] > y[k]) ++h;
    }
    fh[k] = (f + h) / nd;
  }
  return {sum / (nd * (nd - 1.0)), 4.0 * sample_var(fh), conc};
}

Spearman spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  std::vector<double> fx(n), fy(n);
  for (std::size_t k = 0; k < n; ++k) {
    int cx = 0, cy = 0;
    for (std::size_t j = 0; j < n; ++j) {
      cx += x[j] <= x[k];
      cy += y[j] <= y[k];
    }
    fx[k] = cx / nd;
    fy[k] = cy / nd;
  }
  double d2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) d2 += std::pow(nd * (fx[k] - fy[k]), 2);
  const double rho = 1.0 - 6.0 * d2 / (nd * (nd * nd - 1.0));
  std::vector<double> psi(n);
  for (std::size_t k = 0; k < n; ++k) {
    double g1 = 0.0, g2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] >= x[k]) g1 += fy[j];
      if (y[j] >= y[k]) g2 += fx[j];
    }
    psi[k] = fx[k] * fy[k] + g1 / nd + g2 / nd;
  }
  return {rho, 144.0 * sample_var(psi)};
}

MannWhitney mannwhitney(const std::vector<double>& x, const std::vector<double>& y) {
  std::int64_t count = 0;
  std::vector<double> h(x.size(), 0.0), f(y.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (x[i] < y[j]) ++count;
      if (y[j] > x[i]) h[i] += 1.0;
      if (x[i] < y[j]) f[j] += 1.0;
    }
  }
  for (double& v : h) v /= static_cast<double>(y.size());
  for (double& v : f) v /= static_cast<double>(x.size());
  return {count, sample_var(h), sample_var(f)};
}

SignedRank signedrank(const std::vector<double>& d) {
  const std::size_t n = d.size();
  const double nd = static_cast<double>(n);
  SignedRank out{0, 0.0, 0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) out.u_n += d[i] + d[j] > 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] <= 0) continue;
    ++out.positives;
    double rank = 1.0;
    for (std::size_t j = 0; j < n; ++j) rank += std::abs(d[j]) < std::abs(d[i]);
    out.w_n += rank;
  }
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    int c = 0;
    for (std::size_t j = 0; j < n; ++j) c += d[j] <= -d[i];
    f[i] = c / nd;
  }
  out.v_n = 4.0 * sample_var(f);
  return out;
}

double ks_independence(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  double best = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double t = x[a], s = y[b];
      int joint = 0, fx = 0, gy = 0;
      for (std::size_t i = 0; i < n; ++i) {
        joint += x[i] <= t && y[i] <= s;
        fx += x[i] <= t;
        gy += y[i] <= s;
      }
      best = std::max(best, std::abs(joint / nd - (fx / nd) * (gy / nd)));
    }
  }
  return std::sqrt(nd) * best;
}

double ks_symmetry(const std::vector<double>& d) {
  const std::size_t n = d.size();
  const double nd = static_cast<double>(n);
  std::vector<double> points;
  for (double v : d) {
    points.push_back(v);
    points.push_back(-v);
  }
  double best = 0.0;
  for (double t : points) {
    // F_n(t) against the ECDF of -D at t, and just left of t.
    for (int side = 0; side < 2; ++side) {
      int f = 0, g = 0;
      for (double v : d) {
        if (side == 0) {
          f += v <= t;
          g += -v <= t;
        } else {
          f += v < t;
          g += -v < t;
        }
      }
      best = std::max(best, std::abs(f - g) / nd);
    }
  }
  return std::sqrt(nd) * best;
}

double ks_twosample(const std::vector<double>& x, const std::vector<double>& y) {
  double best = 0.0;
  auto frac = [](const std::vector<double>& v, double t) {
    return static_cast<double>(std::count_if(v.begin(), v.end(), [t](double e) { return e <= t; })) /
           static_cast<double>(v.size());
  };
  for (const auto* v : {&x, &y}) {
    for (double t : *v) best = std::max(best, std::abs(frac(x, t) - frac(y, t)));
  }
  return best;
}

double pearson_robust(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - mx) * (y[i] - my);
  const double mz = std::accumulate(z.begin(), z.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : z) ss += (v - mz) * (v - mz);
  return std::accumulate(z.begin(), z.end(), 0.0) / std::sqrt(ss);
}

double variance(const std::vector<double>& v) { return sample_var(v); }

double welch_t(const std::vector<double>& a, const std::vector<double>& b) {
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / na;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / nb;
  return (ma - mb) / std::sqrt(sample_var(a) / na + sample_var(b) / nb);
}

std::vector<double> normals(std::mt19937_64& g, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (double& e : v) e = d(g);
  return v;
}

std::vector<double> uniforms(std::mt19937_64& g, std::size_t n) {
  std::uniform_real_distribution<double> d;
  std::vector<double> v(n);
  for (double& e : v) e = d(g);
  return v;
}

std::vector<double> spread(std::mt19937_64& g, std::size_t n) {
  std::normal_distribution<double> d;
  std::uniform_int_distribution<int> scale(-3, 3);
  std::vector<double> v(n);
  for (double& e : v) e = d(g) * std::pow(10.0, scale(g));
  return v;
}

std::vector<double> coarse(std::mt19937_64& g, std::size_t n, int k) {
  std::uniform_int_distribution<int> d(0, k - 1);
  std::vector<double> v(n);
  for (double& e : v) e = d(g);
  return v;
}

std::size_t size_between(std::mt19937_64& g, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

}  // namespace oracle

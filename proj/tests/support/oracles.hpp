#pragma once

// Direct O(n^2) / O(n^3) definitions used as references for the fast code.

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

struct Kendall {
  double t_n;
  double v_n;
  std::int64_t concordant;
};
Kendall kendall(const std::vector<double>& x, const std::vector<double>& y);

struct Spearman {
  double rho;
  double v_n;
};
Spearman spearman(const std::vector<double>& x, const std::vector<double>& y);

struct MannWhitney {
  std::int64_t count;
  double v1;
  double v2;
};
MannWhitney mannwhitney(const std::vector<double>& x, const std::vector<double>& y);

struct SignedRank {
  std::int64_t u_n;
  double w_n;
  std::int64_t positives;
  double v_n;
};
SignedRank signedrank(const std::vector<double>& d);

double ks_independence(const std::vector<double>& x, const std::vector<double>& y);
double ks_symmetry(const std::vector<double>& d);
double ks_twosample(const std::vector<double>& x, const std::vector<double>& y);

/// Pearson robust statistic, straight from the centered cross-products.
double pearson_robust(const std::vector<double>& x, const std::vector<double>& y);

/// Unbiased sample variance.
double variance(const std::vector<double>& v);

/// Welch two-sample t statistic.
double welch_t(const std::vector<double>& a, const std::vector<double>& b);

// Generators for property tests.
std::vector<double> normals(std::mt19937_64& g, std::size_t n);
std::vector<double> uniforms(std::mt19937_64& g, std::size_t n);
/// Tie-free draws on a wide continuous range, mixed scales and signs.
std::vector<double> spread(std::mt19937_64& g, std::size_t n);
/// n values drawn from only k distinct levels.
std::vector<double> coarse(std::mt19937_64& g, std::size_t n, int k);
std::size_t size_between(std::mt19937_64& g, std::size_t lo, std::size_t hi);

}  // namespace oracle

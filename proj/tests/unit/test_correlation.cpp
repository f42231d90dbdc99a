#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "robustest/correlation.hpp"
#include "robustest/distributions.hpp"
#include "robustest/errors.hpp"
#include "robustest/variates.hpp"

using namespace robustest;

namespace {

void expect_rel(double got, double want, double rel) {
  EXPECT_LE(std::abs(got - want), rel * std::max(1e-300, std::abs(want))) << got << " vs " << want;
}

}  // namespace

TEST(PearsonClassic, Examples) {
  const auto perfect = pearson_classic(PairedSample({1, 2, 3}, {1, 2, 3}));
  EXPECT_EQ(*perfect.estimate, 1.0);
  EXPECT_EQ(perfect.p_value, 0.0);
  EXPECT_FALSE(perfect.notes.empty());
  EXPECT_DOUBLE_EQ(*pearson_classic(PairedSample({1, 2, 3}, {3, 1, 2})).estimate, -0.5);
  EXPECT_THROW(pearson_classic(PairedSample({1, 1, 1}, {1, 2, 3})), DegenerateInput);
}

TEST(PearsonClassic, StatisticFormula) {
  const PairedSample d({1, 2, 3, 4, 5, 6}, {2, 1, 4, 3, 7, 5});
  const auto r = pearson_classic(d);
  const double rho = *r.estimate;
  EXPECT_NEAR(r.statistic, rho / std::sqrt((1 - rho * rho) / 4.0), 1e-12);
  EXPECT_NEAR(r.p_value, dist::two_sided_t_p(r.statistic, 4), 1e-14);
}

TEST(PearsonRobust, HandComputed) {
  const auto r = pearson_robust(PairedSample({1, 2, 3, 4}, {1, 3, 2, 4}));
  EXPECT_NEAR(r.statistic, 1.6, 1e-12);
  const auto same = pearson_robust(PairedSample({1, 2, 3, 4}, {1, 2, 3, 4}));
  EXPECT_TRUE(std::isfinite(same.statistic));
  EXPECT_DOUBLE_EQ(*same.estimate, 1.0);
}

TEST(PearsonRobust, MatchesOracleAndAffineInvariance) {
  std::mt19937_64 g(21);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = oracle::size_between(g, 5, 150);
    const auto x = oracle::normals(g, n);
    auto y = oracle::normals(g, n);
    for (std::size_t i = 0; i < n; ++i) y[i] += 0.3 * x[i] * x[i];
    const auto base = pearson_robust(PairedSample(x, y));
    expect_rel(base.statistic, oracle::pearson_robust(x, y), 1e-12);
    std::vector<double> xa(n), yc(n), yneg(n);
    for (std::size_t i = 0; i < n; ++i) {
      xa[i] = 3.5 * x[i] - 2.0;
      yc[i] = 0.25 * y[i] + 7.0;
      yneg[i] = -2.0 * y[i] + 1.0;
    }
    EXPECT_NEAR(pearson_robust(PairedSample(xa, yc)).statistic, base.statistic, 1e-12 * (1 + std::abs(base.statistic)));
    EXPECT_NEAR(pearson_robust(PairedSample(xa, yneg)).statistic, -base.statistic, 1e-12 * (1 + std::abs(base.statistic)));
  }
}

TEST(PearsonRobust, OutcomeInvariants) {
  std::mt19937_64 g(22);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = oracle::size_between(g, 5, 300);
    const auto r = pearson_robust(PairedSample(oracle::normals(g, n), oracle::normals(g, n)));
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
    ASSERT_TRUE(r.ci);
    EXPECT_LE(r.ci->lower, *r.estimate);
    EXPECT_GE(r.ci->upper, *r.estimate);
    EXPECT_GE(r.ci->lower, -1.0);
    EXPECT_LE(r.ci->upper, 1.0);
  }
}

TEST(Kendall, Examples) {
  const auto k = kendall_statistics(PairedSample({1, 2, 3}, {1, 3, 2}));
  EXPECT_DOUBLE_EQ(k.t_n, 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(k.tau, 1.0 / 3.0);
  EXPECT_EQ(k.concordant, 2.0);
  EXPECT_EQ(kendall_statistics(PairedSample({1, 2}, {2, 1})).tau, -1.0);
  EXPECT_EQ(*kendall_classic(PairedSample({1, 2, 3}, {1, 2, 3})).estimate, 1.0);
  EXPECT_DOUBLE_EQ(*kendall_classic(PairedSample({1, 2, 3}, {1, 3, 2})).estimate, 1.0 / 3.0);
}

TEST(Kendall, TiesNeedPolicy) {
  const PairedSample d({1, 2, 2, 3, 4}, {5, 3, 1, 2, 4});
  try {
    kendall_robust(d);
    FAIL() << "expected a tie error";
  } catch (const TieError& e) {
    EXPECT_NE(std::string(e.what()).find("x"), std::string::npos);
  }
  const auto r = kendall_robust(d, 0.05, TiesBreak::random, RngStream(5));
  EXPECT_FALSE(r.notes.empty());
  const auto again = kendall_robust(d, 0.05, TiesBreak::random, RngStream(5));
  EXPECT_EQ(r.statistic, again.statistic);
}

TEST(Kendall, MatchesBruteForce) {
  std::mt19937_64 g(23);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = oracle::size_between(g, 2, 200);
    const auto x = oracle::spread(g, n);
    auto y = oracle::spread(g, n);
    if (rep % 3 == 0) {
      for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
    }
    const auto fast = kendall_statistics(PairedSample(x, y));
    const auto slow = oracle::kendall(x, y);
    ASSERT_EQ(static_cast<std::int64_t>(fast.concordant), slow.concordant) << "n=" << n;
    EXPECT_NEAR(fast.t_n, slow.t_n, 1e-15);
    EXPECT_EQ(fast.tau, 2.0 * fast.t_n);
    if (n > 2) EXPECT_NEAR(fast.v_n, slow.v_n, 1e-12 * std::max(1.0, slow.v_n));
  }
}

TEST(Kendall, MonotoneInvariance) {
  std::mt19937_64 g(24);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = oracle::size_between(g, 5, 120);
    const auto x = oracle::normals(g, n);
    auto y = oracle::normals(g, n);
    for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
    std::vector<double> xt(n), yt(n);
    for (std::size_t i = 0; i < n; ++i) {
      xt[i] = std::exp(x[i]);
      yt[i] = y[i] * y[i] * y[i] + 4.0;
    }
    const auto a = kendall_robust(PairedSample(x, y)), b = kendall_robust(PairedSample(xt, yt));
    EXPECT_EQ(a.statistic, b.statistic);
    EXPECT_EQ(*a.estimate, *b.estimate);
    const auto s1 = spearman_robust(PairedSample(x, y)), s2 = spearman_robust(PairedSample(xt, yt));
    EXPECT_EQ(s1.statistic, s2.statistic);
    EXPECT_EQ(*s1.estimate, *s2.estimate);
  }
}

TEST(Kendall, IndependenceVarianceLimit) {
  RngStream rng(25);
  const std::size_t n = 10000;
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = rng.uniform();
    y[i] = rng.uniform();
  }
  const auto k = kendall_statistics(PairedSample(x, y));
  EXPECT_NEAR(k.v_n, 1.0 / 9.0, 0.1 / 9.0);
  EXPECT_NEAR(spearman_statistics(PairedSample(x, y)).v_n, 1.0, 0.05);
}

TEST(Kendall, ClassicCalibration) {
  int rejected = 0;
  const int reps = 10000;
  for (int r = 0; r < reps; ++r) {
    RngStream rng(26, r);
    std::vector<double> x(10), y(10);
    for (int i = 0; i < 10; ++i) {
      x[i] = rng.uniform();
      y[i] = rng.uniform();
    }
    rejected += kendall_classic(PairedSample(x, y)).p_value < 0.05;
  }
  EXPECT_NEAR(rejected / double(reps), 0.05, 0.02);
}

TEST(Kendall, RobustCiUsesTestVariance) {
  RngStream rng(27);
  std::vector<double> x(80), y(80);
  for (int i = 0; i < 80; ++i) {
    x[i] = dist::standard_normal(rng);
    y[i] = x[i] + dist::standard_normal(rng);
  }
  const PairedSample d(x, y);
  const auto r = kendall_robust(d);
  const auto k = kendall_statistics(d);
  EXPECT_EQ(*r.variance_estimate, k.v_n);
  EXPECT_NEAR(r.statistic, std::sqrt(80.0) * k.t_n / std::sqrt(k.v_n), 1e-12);
  const double half = dist::norm_quantile(0.975) * 2.0 * std::sqrt(k.v_n / 80.0);
  EXPECT_NEAR(r.ci->upper - r.ci->lower, std::min(1.0, k.tau + half) - std::max(-1.0, k.tau - half), 1e-12);
}

TEST(Spearman, Examples) {
  EXPECT_DOUBLE_EQ(spearman_statistics(PairedSample({1, 2, 3}, {1, 3, 2})).rho, 0.5);
  EXPECT_DOUBLE_EQ(*spearman_classic(PairedSample({1, 2, 3}, {1, 3, 2})).estimate, 0.5);
  EXPECT_EQ(spearman_statistics(PairedSample({1.5, 2, 9, 4}, {1.5, 2, 9, 4})).rho, 1.0);
  const auto rev = spearman_classic(PairedSample({1, 2, 3, 4}, {8, 6, 4, 2}));
  EXPECT_EQ(*rev.estimate, -1.0);
  EXPECT_EQ(rev.p_value, 0.0);
}

TEST(Spearman, MatchesBruteForce) {
  std::mt19937_64 g(28);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = oracle::size_between(g, 3, 200);
    const auto x = oracle::spread(g, n);
    auto y = oracle::spread(g, n);
    if (rep % 2 == 0) {
      for (std::size_t i = 0; i < n; ++i) y[i] = y[i] * 0.1 + x[i];
    }
    const auto fast = spearman_statistics(PairedSample(x, y));
    const auto slow = oracle::spearman(x, y);
    EXPECT_NEAR(fast.rho, slow.rho, 1e-12);
    EXPECT_NEAR(fast.v_n, slow.v_n, 1e-12 * std::max(1.0, slow.v_n)) << "n=" << n;
  }
}

TEST(Spearman, ClassicCalibration) {
  int rejected = 0;
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    RngStream rng(29, r);
    std::vector<double> x(50), y(50);
    for (int i = 0; i < 50; ++i) {
      x[i] = rng.uniform();
      y[i] = rng.uniform();
    }
    rejected += spearman_classic(PairedSample(x, y)).p_value < 0.05;
  }
  EXPECT_NEAR(rejected / double(reps), 0.05, 0.02);
}

TEST(Correlation, OutcomeInvariants) {
  std::mt19937_64 g(30);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = oracle::size_between(g, 5, 100);
    const auto x = oracle::spread(g, n);
    auto y = oracle::spread(g, n);
    if (rep % 2) {
      for (std::size_t i = 0; i < n; ++i) y[i] = std::abs(y[i]) + x[i] * x[i];
    }
    const PairedSample d(x, y);
    for (const auto& r : {kendall_robust(d), kendall_classic(d), spearman_robust(d), spearman_classic(d),
                          pearson_classic(d)}) {
      EXPECT_GE(r.p_value, 0.0);
      EXPECT_LE(r.p_value, 1.0);
      ASSERT_TRUE(r.estimate);
      EXPECT_GE(*r.estimate, -1.0);
      EXPECT_LE(*r.estimate, 1.0);
      if (r.ci) {
        EXPECT_LE(r.ci->lower, *r.estimate);
        EXPECT_GE(r.ci->upper, *r.estimate);
      }
    }
  }
}

TEST(Correlation, SizeRequirements) {
  EXPECT_THROW(kendall_robust(PairedSample({1, 2}, {2, 1})), InsufficientData);
  EXPECT_THROW(spearman_robust(PairedSample({1, 2, 3}, {2, 1, 3})), InsufficientData);
  EXPECT_THROW(pearson_robust(PairedSample({1, 2}, {2, 1})), InsufficientData);
}

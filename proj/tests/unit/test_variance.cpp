#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "robustest/errors.hpp"
#include "robustest/variance.hpp"
#include "robustest/variates.hpp"

using namespace robustest;

namespace {

GroupedSample model3(RngStream& rng, std::size_t n) {
  std::vector<double> x(n);
  std::vector<std::string> lab(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist::bernoulli(rng, 2.0 / 3.0)) {
      lab[i] = "1";
      x[i] = dist::chisq2(rng) / 2.0;
    } else {
      lab[i] = "0";
      x[i] = dist::standard_normal(rng);
    }
  }
  return GroupedSample(x, lab);
}

}  // namespace

TEST(WelchAnova, Examples) {
  const auto same = welch_anova(GroupedSample::from_groups({{1, 2, 3}, {1, 2, 3}}));
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_EQ(same.p_value, 1.0);
  EXPECT_THROW(welch_anova(GroupedSample::from_groups({{1, 2, 3}, {5, 5, 5}})), DegenerateInput);
}

TEST(WelchAnova, TwoGroupsIsSquaredWelchT) {
  const std::vector<double> a{1, 2, 3, 4}, b{2, 3, 4, 5};
  const auto r = welch_anova(GroupedSample::from_groups({a, b}));
  EXPECT_NEAR(r.statistic, std::pow(oracle::welch_t(a, b), 2), 1e-10);
  std::mt19937_64 g(51);
  for (int rep = 0; rep < 300; ++rep) {
    const auto x = oracle::normals(g, oracle::size_between(g, 2, 50));
    auto y = oracle::normals(g, oracle::size_between(g, 2, 50));
    for (double& v : y) v = 3.0 * v + 0.5;
    const auto w = welch_anova(GroupedSample::from_groups({x, y}));
    EXPECT_EQ(w.df1, 1.0);
    EXPECT_NEAR(w.df1 * w.statistic, std::pow(oracle::welch_t(x, y), 2),
                1e-10 * std::max(1.0, w.statistic));
  }
}

TEST(WelchAnova, AffineInvariance) {
  std::mt19937_64 g(52);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t p = oracle::size_between(g, 2, 5);
    std::vector<std::vector<double>> groups, moved;
    for (std::size_t k = 0; k < p; ++k) {
      auto v = oracle::normals(g, oracle::size_between(g, 3, 30));
      for (double& e : v) e = e * (1.0 + k) + 0.3 * k;
      groups.push_back(v);
      for (double& e : v) e = -2.5 * e + 11.0;
      moved.push_back(v);
    }
    const auto a = welch_anova(GroupedSample::from_groups(groups));
    const auto b = welch_anova(GroupedSample::from_groups(moved));
    EXPECT_NEAR(a.statistic, b.statistic, 1e-10 * std::max(1.0, a.statistic));
    EXPECT_EQ(a.df1, p - 1.0);
    EXPECT_GT(a.df2, 0.0);
    EXPECT_GE(a.asymptotic_p_value, 0.0);
    EXPECT_LE(a.asymptotic_p_value, 1.0);
  }
}

TEST(VartestRobust, Examples) {
  EXPECT_THROW(vartest_robust(GroupedSample::from_groups({{-1, 1, -1, 1}, {-2, 2, -2, 2}})), DegenerateInput);
  EXPECT_EQ(vartest_robust(GroupedSample::from_groups({{1, 4, 2, 8}, {1, 4, 2, 8}})).statistic, 0.0);
  EXPECT_THROW(vartest_robust(GroupedSample::from_groups({{1, 2}, {1, 2, 3}})), InsufficientData);
}

TEST(VartestRobust, IgnoresGroupMeans) {
  std::mt19937_64 g(53);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t p = oracle::size_between(g, 2, 4);
    std::vector<std::vector<double>> groups, shifted;
    for (std::size_t k = 0; k < p; ++k) {
      auto v = oracle::normals(g, oracle::size_between(g, 4, 40));
      groups.push_back(v);
      const double shift = (k == 1) ? 37.25 : 0.0;
      for (double& e : v) e += shift;
      shifted.push_back(v);
    }
    const auto a = vartest_robust(GroupedSample::from_groups(groups));
    const auto b = vartest_robust(GroupedSample::from_groups(shifted));
    EXPECT_NEAR(a.statistic, b.statistic, 1e-10 * std::max(1.0, a.statistic));
  }
}

TEST(VartestRobust, CalibratedOnMixedLaws) {
  int rejected = 0;
  const int trials = 2000;
  for (int t = 0; t < trials; ++t) {
    RngStream rng(54, t);
    rejected += vartest_robust(model3(rng, 300)).p_value < 0.05;
  }
  EXPECT_NEAR(rejected / double(trials), 0.053, 0.02);
}

TEST(Fisher, Examples) {
  const Sample a({1, 3, 2, 7}), b({1, 3, 2, 7});
  const auto eq = fisher_vartest(a, b);
  EXPECT_EQ(eq.statistic, 1.0);
  EXPECT_NEAR(eq.p_value, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(fisher_vartest(Sample({0, 2}), Sample({0, 1})).statistic, 4.0);
  EXPECT_THROW(fisher_vartest(Sample({1, 1}), Sample({0, 1})), DegenerateInput);
}

TEST(Bartlett, EqualVariancesGiveZero) {
  const auto r = bartlett_test(GroupedSample::from_groups({{1, 2, 3}, {11, 12, 13}, {-5, -4, -3}}));
  EXPECT_NEAR(r.statistic, 0.0, 1e-12);
  EXPECT_THROW(bartlett_test(GroupedSample::from_groups({{1, 1}, {0, 1}})), DegenerateInput);
}

TEST(Bartlett, CloseToFisherForTwoGaussianGroups) {
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    RngStream rng(55, t);
    std::vector<double> a(60), b(60);
    for (double& v : a) v = dist::standard_normal(rng);
    for (double& v : b) v = dist::standard_normal(rng);
    const double pf = fisher_vartest(Sample(a), Sample(b)).p_value;
    const double pb = bartlett_test(GroupedSample::from_groups({a, b})).p_value;
    worst = std::max(worst, std::abs(pf - pb));
  }
  EXPECT_LT(worst, 0.02);
}

TEST(Levene, Examples) {
  EXPECT_EQ(levene_bf_test(GroupedSample::from_groups({{1, 5, 2}, {1, 5, 2}})).statistic, 0.0);
  EXPECT_THROW(levene_bf_test(GroupedSample::from_groups({{3, 3}, {4, 4}})), DegenerateInput);
}

TEST(Levene, MatchesOneWayOnMedianDeviations) {
  const std::vector<std::vector<double>> groups{{1, 4, 9, 2, 6}, {3, 3.5, 8, 1}, {0, 10, 4}};
  std::vector<std::vector<double>> dev;
  for (const auto& g : groups) {
    const double med = Sample(g).median();
    std::vector<double> d;
    for (double v : g) d.push_back(std::abs(v - med));
    dev.push_back(d);
  }
  EXPECT_EQ(*std::min_element(dev[0].begin(), dev[0].end()), 0.0);
  const auto r = levene_bf_test(GroupedSample::from_groups(groups));
  EXPECT_NEAR(r.statistic, oneway_f(dev).f, 1e-12);
}

TEST(OneWayF, HandComputed) {
  // Means 2 and 5, grand mean 3.5; between 13.5 on 1 df, within 4 on 4 df.
  const auto f = oneway_f({{1, 2, 3}, {4, 5, 6}});
  EXPECT_NEAR(f.f, 13.5, 1e-12);
  EXPECT_EQ(f.df1, 1.0);
  EXPECT_EQ(f.df2, 4.0);
}

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eoe/error.hpp"
#include "eoe/summary.hpp"

namespace eoe {
namespace {

TEST(Summary, BasicStatistics) {
  const SampleSummary s({4.0, 1.0, 3.0, 2.0}, {0.0, 1.0});
  EXPECT_EQ(s.count(), 4u);
  EXPECT_DOUBLE_EQ(s.mean(), 2.5);
  EXPECT_DOUBLE_EQ(s.variance(), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.std_error(), std::sqrt(5.0 / 3.0 / 4.0));
  EXPECT_DOUBLE_EQ(s.median(), 2.5);
  EXPECT_DOUBLE_EQ(s.quantile(0.0), 1.0);
  EXPECT_DOUBLE_EQ(s.quantile(1.0), 4.0);
  EXPECT_DOUBLE_EQ(s.quantile(0.25), 1.75);
  EXPECT_DOUBLE_EQ(s.ecdf(0.5), 0.0);
  EXPECT_DOUBLE_EQ(s.ecdf(2.0), 0.5);
  EXPECT_DOUBLE_EQ(s.ecdf(10.0), 1.0);
  EXPECT_THROW((void)s.quantile(1.5), Error);
}

TEST(Summary, SingleSampleHasZeroVariance) {
  SampleSummary s;
  s.add(3.0);
  EXPECT_DOUBLE_EQ(s.variance(), 0.0);
  EXPECT_DOUBLE_EQ(s.median(), 3.0);
}

TEST(Summary, EmpiricalTransform) {
  const SampleSummary s({0.5, 1.0, 2.0}, {0.0, 1.0, 3.0});
  const auto t = s.transform();
  ASSERT_EQ(t.size(), 3u);
  EXPECT_DOUBLE_EQ(t[0], 1.0);
  EXPECT_NEAR(t[1], (std::exp(-0.5) + std::exp(-1.0) + std::exp(-2.0)) / 3.0, 1e-15);
  EXPECT_LE(t[2], t[1]);
  EXPECT_DOUBLE_EQ(s.transform_se()[0], 0.0);

  const double m = t[1];
  double sq = 0.0;
  for (double x : {0.5, 1.0, 2.0}) sq += (std::exp(-x) - m) * (std::exp(-x) - m);
  EXPECT_NEAR(s.transform_se_at(1.0), std::sqrt(sq / 2.0 / 3.0), 1e-15);
}

TEST(Summary, TransformIsMonotone) {
  std::mt19937_64 gen(1);
  std::exponential_distribution<double> exp(0.7);
  SampleSummary s;
  for (int i = 0; i < 1000; ++i) s.add(exp(gen));
  double prev = s.transform_at(0.0);
  EXPECT_DOUBLE_EQ(prev, 1.0);
  for (double x = 0.01; x < 100.0; x *= 1.3) {
    const double v = s.transform_at(x);
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(Summary, MergeIsOrderIndependent) {
  const std::vector<double> grid = {0.5, 2.0};
  const SampleSummary a({3.0, 0.1, 7.0}, grid);
  const SampleSummary b({2.0, 2.0, 0.05}, grid);
  SampleSummary ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  EXPECT_EQ(ab.count(), 6u);
  EXPECT_TRUE(std::equal(ab.sorted_samples().begin(), ab.sorted_samples().end(), ba.sorted_samples().begin()));
  EXPECT_EQ(ab.mean(), ba.mean());
  EXPECT_EQ(ab.transform(), ba.transform());
  EXPECT_THROW(ab.merge(SampleSummary({1.0}, {1.0})), Error);
}

TEST(Summary, AsTransformIsEmpirical) {
  const SampleSummary s({1.0, 2.0}, {});
  const auto ev = s.as_transform({});
  EXPECT_EQ(ev.provenance(), Provenance::Empirical);
  EXPECT_NEAR(ev(1.0), (std::exp(-1.0) + std::exp(-2.0)) / 2.0, 1e-15);
}

}  // namespace
}  // namespace eoe

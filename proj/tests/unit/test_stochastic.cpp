#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hdgrid/errors.hpp"
#include "hdgrid/stochastic.hpp"

using namespace hdgrid;

namespace {

// E[min of N radii] = integral over [0, sqrt(n-1)] of P(radius > s)^N ds,
// by composite Simpson on a fine mesh.
double quadrature_expectation(int n, std::int64_t N) {
  const double top = std::sqrt(static_cast<double>(n - 1));
  const auto survival = [&](double s) {
    return std::pow(1.0 - std::pow(s / top, n - 1), static_cast<double>(N));
  };
  const int m = 400000;
  const double step = top / m;
  double sum = survival(0.0) + survival(top);
  for (int i = 1; i < m; ++i) sum += (i % 2 ? 4.0 : 2.0) * survival(i * step);
  return sum * step / 3.0;
}

}  // namespace

TEST(ProbeSegment, AxisAlignedThroughNodes) {
  const Grid g(2, {0, 0, 0}, 0.5, {9, 9, 1});
  const auto p = probe_segment(g, {{0.0, 1.0, 0}, {3.0, 1.0, 0}});
  EXPECT_EQ(p.beta, 0.0);
  EXPECT_GE(p.edges_crossed, static_cast<std::int64_t>(std::floor(3.0 / (std::sqrt(2.0) * 0.5))));
}

TEST(ProbeSegment, CellDiagonalHitsCorners) {
  const Grid g(2, {0, 0, 0}, 1.0, {3, 3, 1});
  EXPECT_EQ(probe_segment(g, {{0, 0, 0}, {1, 1, 0}}).beta, 0.0);
}

TEST(ProbeSegment, OffsetSegmentDistance) {
  const Grid g(2, {0, 0, 0}, 1.0, {4, 4, 1});
  const auto p = probe_segment(g, {{0.2, 1.3, 0}, {2.7, 1.3, 0}});
  EXPECT_NEAR(p.beta, 0.3, 1e-12);
  EXPECT_EQ(p.edges_crossed, 2);  // planes x = 1 and x = 2
}

TEST(ProbeSegment, OutsideHullIsAnError) {
  const Grid g(2, {0, 0, 0}, 1.0, {3, 3, 1});
  EXPECT_THROW(probe_segment(g, {{0.5, 0.5, 0}, {2.5, 0.5, 0}}), Error);
}

TEST(ProbeSegment, RandomSegmentsRespectBothBounds) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int dim = 2; dim <= 3; ++dim) {
    const Grid g(dim, {0, 0, 0}, 0.37, {15, 15, dim == 3 ? 15 : 1});
    for (int t = 0; t < 300; ++t) {
      Segment s;
      for (int k = 0; k < dim; ++k) {
        s.p[k] = u(rng);
        s.q[k] = u(rng);
      }
      const auto probe = probe_segment(g, s);
      EXPECT_LE(probe.beta, std::sqrt(static_cast<double>(dim)) / 2 * g.spacing() + 1e-12);
      const double len = distance(s.p, s.q);
      EXPECT_GE(probe.edges_crossed, static_cast<std::int64_t>(std::floor(len / (std::sqrt(dim * 1.0) * g.spacing()))));
    }
  }
}

TEST(ProbeSegment, MiddleSegmentAndBetaBound) {
  const Segment s = middle_segment({1, 0, 0}, {0, 1, 0}, 8.0);
  EXPECT_DOUBLE_EQ(s.p[1], 3.0);
  EXPECT_DOUBLE_EQ(s.q[1], 5.0);
  EXPECT_DOUBLE_EQ(beta_error_bound(0.1, 3.0), 0.01);
}

TEST(Iterates, GoldenRatio) {
  const auto a = analyze_iterates(0.5L, 0.6180339887498949L, 10);
  ASSERT_FALSE(a.rational);
  EXPECT_LE(a.epsilon, 0.1L);
  ASSERT_TRUE(a.found);
  EXPECT_LE(static_cast<long double>(a.m), 2.0L / (a.epsilon * a.epsilon));
  // Direct enumeration: the first iterate not exceeding epsilon.
  std::int64_t first = -1;
  for (std::int64_t m = 0; m < 100000 && first < 0; ++m) {
    const long double x = 0.5L + m * 0.6180339887498949L;
    if (x - std::floor(x) <= a.epsilon + 1e-12L) first = m;
  }
  EXPECT_EQ(a.m, first);
}

TEST(Iterates, RationalIncrementIsFlagged) {
  const auto a = analyze_iterates(0.25L, 0.5L, 10);
  EXPECT_TRUE(a.rational);
  EXPECT_FALSE(a.found);
}

TEST(Iterates, SmallStartIsImmediate) {
  const auto a = analyze_iterates(0.001L, std::sqrt(2.0L), 20);
  ASSERT_FALSE(a.rational);
  EXPECT_EQ(a.m, 0);
}

TEST(Iterates, PostconditionsHoldForRandomIncrements) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<long double> u(0.0L, 1.0L);
  std::uniform_int_distribution<int> n(1, 200);
  for (int t = 0; t < 300; ++t) {
    const auto a = analyze_iterates(u(rng) * 5, u(rng) * 3, n(rng));
    if (a.rational) continue;
    EXPECT_LE(a.epsilon, 1.0L / a.N + 1e-15L);
    ASSERT_TRUE(a.found);
    EXPECT_LE(a.m, a.K_bound);
    EXPECT_LE(static_cast<long double>(a.K_bound), 2.0L / (a.epsilon * a.epsilon));
  }
}

TEST(OrderStatistics, ClosedFormSpecialValues) {
  EXPECT_NEAR(expected_min_distance(2, 1), 0.5, 1e-14);
  // n = 2 is the minimum of N uniforms on [0, 1].
  for (std::int64_t N : {2, 10, 1000}) EXPECT_NEAR(expected_min_distance(2, N), 1.0 / (N + 1), 1e-12);
  EXPECT_THROW(expected_min_distance(4, 10), Error);
}

TEST(OrderStatistics, ClosedFormMatchesQuadrature) {
  for (int n : {2, 3})
    for (std::int64_t N : {1, 10, 100, 1000})
      EXPECT_NEAR(expected_min_distance(n, N), quadrature_expectation(n, N), 1e-7) << n << " " << N;
}

TEST(OrderStatistics, AsymptoticScaling) {
  const double r2 = expected_min_distance(2, 4000) / expected_min_distance(2, 1000);
  const double r3 = expected_min_distance(3, 4000) / expected_min_distance(3, 1000);
  EXPECT_NEAR(r2, 0.25, 1e-3);
  EXPECT_NEAR(r3, 0.5, 1e-3);
}

TEST(OrderStatistics, MonteCarloAgreesWithClosedForm) {
  for (int n : {2, 3})
    for (std::int64_t N : {1, 100}) {
      const auto mc = simulate_min_distance(n, N, 20000, 77);
      EXPECT_NEAR(mc.mean, expected_min_distance(n, N), 3 * mc.stderr_) << n << " " << N;
    }
}

TEST(OrderStatistics, MonteCarloIsThreadInvariant) {
  const auto a = simulate_min_distance(3, 50, 3000, 5, 1);
  const auto b = simulate_min_distance(3, 50, 3000, 5, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.stderr_, b.stderr_);
}

TEST(Uniformity, IrrationalIncrementIsFlat) {
  const auto r = uniformity_histogram(0.1L, std::sqrt(2.0L), 10000, 20);
  EXPECT_EQ(r.histogram.total(), 10000);
  EXPECT_LT(r.max_relative_deviation, 0.15);
}

TEST(Uniformity, RationalIncrementIsSpiked) {
  const auto flat = uniformity_histogram(0.1L, std::sqrt(2.0L), 10000, 20);
  const auto spiked = uniformity_histogram(0.1L, 0.25L, 10000, 20);
  EXPECT_GT(spiked.chi_square, 100 * flat.chi_square);
}

TEST(Uniformity, CountEqualToBins) {
  const auto r = uniformity_histogram(0.3L, (std::sqrt(5.0L) - 1) / 2, 20, 20);
  for (auto c : r.histogram.counts) EXPECT_LE(c, 3);
  EXPECT_THROW(uniformity_histogram(0.3L, 0.1L, 5, 20), Error);
}

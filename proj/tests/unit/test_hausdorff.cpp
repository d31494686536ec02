#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "hdgrid/errors.hpp"
#include "hdgrid/hausdorff.hpp"

using namespace hdgrid;

namespace {

const Shape kA = Shape::box(1, {0, 0, 0}, {1, 0, 0});
const Shape kB = Shape::box(1, {0, 0, 0}, {3, 0, 0});

Grid grid_around(int dim, double lo, double hi, double h) {
  const auto n = static_cast<std::int64_t>(std::llround((hi - lo) / h)) + 1;
  Index counts{1, 1, 1};
  Vec origin{0, 0, 0};
  for (int k = 0; k < dim; ++k) {
    counts[k] = n;
    origin[k] = lo;
  }
  return Grid(dim, origin, h, counts);
}

}  // namespace

TEST(DhApprox, IntervalsAreExactAtNodes) {
  const Grid g = grid_around(1, -1, 4, 0.5);
  const auto rep = dh_approx(sample_exact_distance(g, kA), sample_exact_distance(g, kB));
  EXPECT_DOUBLE_EQ(rep.d_tilde, 2.0);
  EXPECT_DOUBLE_EQ(g.node_position(rep.argmax)[0], 3.0);
}

TEST(DhApprox, IdenticalFieldsGiveZero) {
  const Grid g = grid_around(2, -2, 2, 0.25);
  const auto d = sample_exact_distance(g, Shape::ball(2, {0, 0, 0}, 1.0));
  const auto rep = dh_approx(d, d);
  EXPECT_EQ(rep.d_tilde, 0.0);
  EXPECT_EQ(rep.tie_count, g.node_count());
  EXPECT_EQ(rep.argmax, (Index{0, 0, 0}));
}

TEST(DhApprox, ConcentricBalls) {
  const Grid g = grid_around(2, -3, 3, 0.1);
  const auto rep = dh_approx(sample_exact_distance(g, Shape::ball(2, {0, 0, 0}, 1.0)),
                             sample_exact_distance(g, Shape::ball(2, {0, 0, 0}, 2.0)));
  EXPECT_LE(rep.d_tilde, 1.0 + 1e-12);
  EXPECT_GE(rep.d_tilde, 1.0 - std::sqrt(2.0) * 0.1);
}

TEST(DhApprox, RejectsSignedInputAndMismatchedGrids) {
  const Grid g = grid_around(1, -1, 4, 0.5);
  const auto sd = sample_exact_sd(g, kA);
  const auto d = sample_exact_distance(g, kB);
  EXPECT_THROW(dh_approx(sd, d), Error);
  const Grid other = grid_around(1, -1, 4, 0.25);
  EXPECT_THROW(dh_approx(d, sample_exact_distance(other, kB)), Error);
}

TEST(Oracles, IntervalExample) {
  const double gap = 1e-3;
  const auto o = dh_oracle(kA, kB, gap);
  EXPECT_NEAR(o.dh, 2.0, 1e-3);
  EXPECT_NEAR(o.one_sided_ab, 0.0, 1e-3);
  EXPECT_NEAR(o.one_sided_ba, 2.0, 1e-3);
  EXPECT_NEAR(o.witness.first[0], 3.0, 1e-3);
  EXPECT_NEAR(o.witness.second[0], 1.0, 1e-3);
  const Aabb box{{-2, 0, 0}, {5, 0, 0}};
  EXPECT_NEAR(dh_complementary_oracle(kA, kB, gap, box), 1.5, 1e-3);
  const Grid g = grid_around(1, -2, 5, 0.25);
  EXPECT_NEAR(sd_supnorm(sample_exact_sd(g, kA), sample_exact_sd(g, kB)).value, 2.0, 1e-12);
}

TEST(Oracles, RingBallExample) {
  const double big = 2.0, small = 0.75, gap = 0.02;
  const Shape a = Shape::ball(2, {0, 0, 0}, big);
  const Shape b = Shape::difference(a, Shape::ball(2, {0, 0, 0}, small), true);
  const auto o = dh_oracle(a, b, gap);
  EXPECT_NEAR(o.dh, small, o.error_bound);
  EXPECT_NEAR(o.one_sided_ab, small, o.error_bound);
  EXPECT_NEAR(o.one_sided_ba, 0.0, o.error_bound);
  // Grid with a node at the origin where sd_A = -R and sd_B = r.
  const Grid g = grid_around(2, -3, 3, 0.1);
  const auto sup = sd_supnorm(sample_exact_sd(g, a), sample_exact_sd(g, b));
  EXPECT_GE(sup.value, big + small - 1e-12);
  // The complement of B contains the hole, whose centre is R away from the complement of A.
  const Aabb box{{-3, -3, 0}, {3, 3, 0}};
  EXPECT_NEAR(dh_complementary_oracle(a, b, gap, box), big, 2 * std::sqrt(2.0) * gap);
}

TEST(Oracles, ComplementaryNeedsRoomInTheBox) {
  const Aabb tight{{-0.5, 0, 0}, {3.5, 0, 0}};
  EXPECT_THROW(dh_complementary_oracle(kA, kB, 1e-3, Aabb{{0.5, 0, 0}, {5, 0, 0}}), Error);
  EXPECT_NO_THROW(dh_complementary_oracle(kA, kB, 1e-3, tight));
}

TEST(Oracles, IdenticalSetsAreAtDistanceZero) {
  const Shape s = Shape::unite({Shape::ball(2, {0, 0, 0}, 1.0), Shape::box(2, {0.5, 0.5, 0}, {2, 1, 0})});
  EXPECT_EQ(dh_oracle(s, s, 0.05).dh, 0.0);
  EXPECT_EQ(dh_complementary_oracle(s, s, 0.05, Aabb{{-2, -2, 0}, {3, 3, 0}}), 0.0);
}

TEST(Oracles, MaximumDistanceFunction) {
  const Shape ball = Shape::ball(2, {0, 0, 0}, 1.0);
  EXPECT_NEAR(md_oracle(ball, {0, 0, 0}, 0.01), 1.0, std::sqrt(2.0) * 0.01);
  EXPECT_NEAR(md_oracle(ball, {2, 0, 0}, 0.01), 3.0, std::sqrt(2.0) * 0.01);
  EXPECT_NEAR(md_oracle(Shape::box(2, {0, 0, 0}, {1, 1, 0}), {0, 0, 0}, 0.01), std::sqrt(2.0), 1e-12);
}

TEST(Oracles, ThreadCountDoesNotChangeTheResult) {
  proptest::Gen gen(5);
  const Shape a = gen.union_scene(2, -2, 2), b = gen.union_scene(2, -2, 2);
  const auto o1 = dh_oracle(a, b, 0.02, 1);
  const auto o3 = dh_oracle(a, b, 0.02, 3);
  EXPECT_EQ(o1.dh, o3.dh);
  EXPECT_EQ(o1.witness, o3.witness);
}

TEST(Properties, PointwiseAndLowerBoundSoundness) {
  proptest::Gen gen(21);
  const Grid g = grid_around(2, -3, 3, 0.15);
  for (int t = 0; t < 25; ++t) {
    const Shape a = gen.union_scene(2, -2, 2), b = gen.union_scene(2, -2, 2);
    const auto o = dh_oracle(a, b, 0.02);
    const auto dA = sample_exact_distance(g, a), dB = sample_exact_distance(g, b);
    for (std::size_t i = 0; i < dA.size(); ++i) ASSERT_LE(std::abs(dA[i] - dB[i]), o.dh + o.error_bound);
    EXPECT_LE(dh_approx(dA, dB).d_tilde, o.dh + o.error_bound);
  }
}

TEST(Properties, SignedDistanceSandwich) {
  proptest::Gen gen(22);
  const double gap = 0.02, h = 0.1;
  const Grid g = grid_around(2, -3, 3, h);
  const Aabb box{{-3, -3, 0}, {3, 3, 0}};
  for (int t = 0; t < 10; ++t) {
    // Disjoint unions keep the full signed distance exact.
    const Shape a = gen.primitive(2, -2, 2), b = gen.primitive(2, -2, 2);
    const double dh = dh_oracle(a, b, gap).dh;
    const double dc = dh_complementary_oracle(a, b, gap, box);
    const double sup = sd_supnorm(sample_exact_sd(g, a), sample_exact_sd(g, b)).value;
    const double err = 2 * std::sqrt(2.0) * gap;
    // The node supremum can miss the continuous one by at most the Lipschitz
    // constant 2 times the half diagonal.
    EXPECT_GE(sup, std::max(dh, dc) - err - std::sqrt(2.0) * h);
    EXPECT_LE(sup, dh + dc + 2 * err);
  }
}

TEST(Properties, MaximumDistanceIsALowerBound) {
  proptest::Gen gen(23);
  for (int t = 0; t < 20; ++t) {
    const Shape a = gen.union_scene(2, -2, 2), b = gen.union_scene(2, -2, 2);
    const Vec x = gen.point(2, -4, 4);
    const auto o = dh_oracle(a, b, 0.03);
    const double err = std::sqrt(2.0) * 0.03;
    EXPECT_LE(std::abs(md_oracle(a, x, 0.03) - md_oracle(b, x, 0.03)), o.dh + o.error_bound + 2 * err);
  }
}

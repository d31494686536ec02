#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "hdgrid/bounds.hpp"
#include "hdgrid/errors.hpp"
#include "hdgrid/experiments.hpp"

using namespace hdgrid;

TEST(Delta, ClosedForms) {
  EXPECT_DOUBLE_EQ(delta_closed_form(1), 2.0 / 3.0);
  EXPECT_NEAR(delta_closed_form(2), 1.0229040769485473, 1e-15);
  EXPECT_NEAR(delta_closed_form(3), 1.272111290809159, 1e-15);
  EXPECT_THROW(delta_closed_form(4), Error);
}

TEST(Delta, MaximizationMatchesClosedForms) {
  for (int dim = 1; dim <= 3; ++dim) {
    const auto c = compute_delta(dim);
    EXPECT_NEAR(c.value, delta_closed_form(dim), 1e-8) << "dim " << dim;
    EXPECT_NEAR(delta_objective(dim, c.maximizer), c.value, 1e-15);
  }
}

TEST(Delta, TwoDimensionalMaximizerHasSeveralActivePieces) {
  const auto c = compute_delta(2);
  const Vec y = c.maximizer;
  const double pieces[] = {norm(y), 2 * distance(y, {1, 0, 0}), 2 * distance(y, {0, 1, 0}),
                           2 * distance(y, {1, 1, 0})};
  int active = 0;
  for (double p : pieces)
    if (std::abs(p - c.value) < 1e-8) ++active;
  EXPECT_GE(active, 2);
}

TEST(Delta, OneDimensionalMaximizer) {
  // |y| = 2|1 - y| at y = 2/3.
  EXPECT_NEAR(compute_delta(1).maximizer[0], 2.0 / 3.0, 1e-8);
}

TEST(Delta, DeterministicForFixedSeed) {
  const auto a = compute_delta(3, 16, 99), b = compute_delta(3, 16, 99);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.maximizer, b.maximizer);
}

TEST(MaximalError, AttainsTheSuitableBound) {
  for (double h : {1.0, 0.5}) {
    const auto s = build_maximal_error_scene(h, 0.05 * h);
    const auto rep = dh_approx(s.dA, s.dB);
    EXPECT_NEAR(rep.d_tilde, s.rho, 1e-12 * h);
    EXPECT_NEAR(s.expected_dh - rep.d_tilde, delta_closed_form(2) * h, 1e-6 * h);
    const auto o = dh_oracle(s.a, s.b, 0.01 * h);
    EXPECT_NEAR(o.dh, s.expected_dh, o.error_bound);
  }
}

TEST(MaximalError, RejectsOversizedHole) {
  EXPECT_THROW(build_maximal_error_scene(1.0, 0.5), Error);
  EXPECT_THROW(build_maximal_error_scene(1.0, -0.1), Error);
}

TEST(MaximalError, NodeFieldsMatchShapeDistances) {
  const auto s = build_maximal_error_scene(1.0, 0.1);
  const double gap = 0.005;
  const auto ca = sample_closed_set(s.a, gap), cb = sample_closed_set(s.b, gap);
  for (std::size_t i = 0; i < s.grid.node_count(); ++i) {
    const Vec x = s.grid.node_position(i);
    double da = 1e300, db = 1e300;
    for (const auto& p : ca) da = std::min(da, distance(p, x));
    for (const auto& p : cb) db = std::min(db, distance(p, x));
    EXPECT_NEAR(s.dA[i], da, 2 * gap);
    EXPECT_NEAR(s.dB[i], db, 2 * gap);
  }
}

TEST(Bounds, WorstCaseAndSuitable) {
  HausdorffReport rep;
  rep.d_tilde = 0.5;
  const Grid g(2, {0, 0, 0}, 0.1, {11, 11, 1});
  EXPECT_DOUBLE_EQ(worst_case_bound(rep, g), 0.5 + std::sqrt(2.0) * 0.1);
  EXPECT_FALSE(suitable_bound(rep, g, false).has_value());
  EXPECT_DOUBLE_EQ(*suitable_bound(rep, g, true), 0.5 + delta_closed_form(2) * 0.1);
}

TEST(Suitability, AxisAlignedBoxOnNodesIsSuitable) {
  const Grid g(2, {-2, -2, 0}, 0.5, {9, 9, 1});
  EXPECT_TRUE(check_suitable(g, Shape::box(2, {-1, -1, 0}, {1, 0.5, 0}), 0.05));
}

TEST(Suitability, SmallBallInsideACellIsNot) {
  const Grid g(2, {-2, -2, 0}, 0.5, {9, 9, 1});
  EXPECT_FALSE(check_suitable(g, Shape::ball(2, {0.25, 0.25, 0}, 0.1), 0.02));
}

TEST(Suitability, EmptyShapeIsVacuouslySuitable) {
  const Grid g(2, {-2, -2, 0}, 0.5, {9, 9, 1});
  const Shape empty = Shape::intersect({Shape::ball(2, {-1, 0, 0}, 0.3), Shape::ball(2, {1, 0, 0}, 0.3)});
  EXPECT_TRUE(check_suitable(g, empty, 0.05));
}

TEST(SampledCellBound, ConstantCornerValues) {
  const Grid g(2, {0, 0, 0}, 1.0, {2, 2, 1});
  const ScalarField dA(g, 0.3), dB(g, 0.0);
  // All corners in the set: sup over the cell of min over corners |x - y| is
  // attained at the centre, half the diagonal.
  const double v = cell_upper_bound_sampled(g, {1, 1, 0}, dA, dB, {true, true, true, true}, 3);
  EXPECT_NEAR(v, 0.3 + std::sqrt(2.0) / 2, 1e-12);
  const double w = cell_upper_bound_sampled(g, {1, 1, 0}, dA, dB, {false, false, false, false}, 3);
  EXPECT_NEAR(w, 0.3 + std::sqrt(2.0), 1e-12);
}

TEST(SampledCellBound, BoundsTheMaximalErrorScene) {
  const auto s = build_maximal_error_scene(1.0, 0.05);
  // The scene is sharp, so the cell supremum equals d_H. Each term is
  // 2-Lipschitz in y, so an m-point lattice misses it by at most
  // 2 * (half a lattice diagonal).
  const int m = 17;
  const double bound = general_upper_bound_sampled(s.dA, s.dB, m);
  EXPECT_GE(bound, s.expected_dh - std::sqrt(2.0) / (m - 1));
}

TEST(External, TermMatchesDefinitionAndIsQuadratic) {
  const double r = 2.0;
  for (double h : {0.2, 0.1, 0.05}) {
    const double u = r - std::sqrt(2.0) * h;
    EXPECT_NEAR(external_bound_term(2, h, r), std::sqrt(2 * h * h + u * u) - u, 1e-14);
  }
  const double ratio = external_bound_term(2, 0.01, r) / external_bound_term(2, 0.005, r);
  EXPECT_NEAR(ratio, 4.0, 0.05);
  EXPECT_THROW(external_bound_term(2, 1.5, 2.0), Error);
}

TEST(External, CircleInRingCertificate) {
  const auto scene = scene_circle_in_ring(2, {3, 0, 0});
  ASSERT_TRUE(scene.max_r.has_value());
  EXPECT_DOUBLE_EQ(*scene.max_r, 2.0);
  const auto ok = certify_external(scene.a, scene.b, scene.witness_x, scene.witness_y, *scene.max_r, 0.05);
  EXPECT_TRUE(ok.admissible);
  const auto too_big = certify_external(scene.a, scene.b, scene.witness_x, scene.witness_y, *scene.max_r + 0.5, 0.05);
  EXPECT_FALSE(too_big.admissible);
}

TEST(External, InteriorWitnessIsNotAdmissible) {
  const auto scene = scene_circle_in_ring(2, {0, 0, 0});
  EXPECT_FALSE(scene.max_r.has_value());
  const auto cert = certify_external(scene.a, scene.b, scene.witness_x, scene.witness_y, 0.5, 0.05);
  EXPECT_FALSE(cert.admissible);
}

TEST(External, BoundRequiresAdmissibleCertificate) {
  HausdorffReport rep;
  ExternalCert cert;
  const Grid g(2, {0, 0, 0}, 0.1, {11, 11, 1});
  EXPECT_THROW(external_bound(rep, cert, g), Error);
}

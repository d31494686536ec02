#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hdgrid/vec.hpp"

namespace hdgrid {

struct Aabb {
  Vec lo;
  Vec hi;
  bool empty(int dim) const {
    for (int k = 0; k < dim; ++k)
      if (lo[k] > hi[k]) return true;
    return false;
  }
};

enum class ShapeKind { Ball, Box, Union, Intersection, Complement, Difference };

const char* to_string(ShapeKind kind);

// Closed set in R^n described implicitly. evaluate_sd is negative inside,
// zero on the boundary and positive outside; membership is sd <= 0.
//
// Primitives evaluate the true signed distance. CSG nodes combine children by
// min/max, which has the correct sign everywhere but may underestimate the
// magnitude. Two flags track what is known to be exact:
//   exact_sd()       the whole signed distance is exact
//   exact_distance() the positive part max(sd, 0) is the true distance to the set
// A union of distance-exact children is always distance-exact. Callers that know
// a CSG combination is exact (disjoint union, concentric annulus) may assert it.
class Shape {
 public:
  static Shape ball(int dim, const Vec& center, double radius);
  static Shape box(int dim, const Vec& lo, const Vec& hi);
  static Shape unite(std::vector<Shape> children, bool assert_exact = false);
  static Shape intersect(std::vector<Shape> children, bool assert_exact = false);
  static Shape complement(Shape child);
  static Shape difference(Shape a, Shape b, bool assert_exact = false);

  int dim() const;
  ShapeKind kind() const;
  double evaluate_sd(const Vec& x) const;
  bool contains(const Vec& x) const { return evaluate_sd(x) <= 0.0; }
  bool exact_sd() const;
  bool exact_distance() const;
  bool exactness_asserted() const;

  // nullopt for unbounded sets (complements).
  std::optional<Aabb> bounds() const;

  // Primitive parameters; only meaningful for the matching kind.
  const Vec& center() const;
  double radius() const;
  const Vec& box_lo() const;
  const Vec& box_hi() const;
  const std::vector<Shape>& children() const;

 private:
  struct Node;
  explicit Shape(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class SampleKind { Volume, Boundary };

struct PointCloudSample {
  std::vector<Vec> points;
  SampleKind kind = SampleKind::Volume;
  // Pitch of the lattice or boundary parameterization that produced the points.
  double resolution = 0.0;
};

// Points of the global lattice gap*Z^n that lie in the closed set.
// Throws Error("empty set") when no lattice point lies in the set.
PointCloudSample sample_volume(const Shape& s, double target_gap);

// Points on the boundary with spacing at most target_gap along the
// boundary, from exact parameterizations of the primitive boundaries.
PointCloudSample sample_boundary(const Shape& s, double target_gap);

// Volume and boundary samples merged; the cloud the brute-force oracles use.
std::vector<Vec> sample_closed_set(const Shape& s, double target_gap);

}  // namespace hdgrid

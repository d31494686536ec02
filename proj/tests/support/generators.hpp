#pragma once

// Seeded random scene and point generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "hdgrid/shapes.hpp"

namespace hdgrid::proptest {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Vec point(int dim, double lo, double hi) {
    Vec p{0, 0, 0};
    for (int k = 0; k < dim; ++k) p[k] = uniform(lo, hi);
    return p;
  }

  Shape primitive(int dim, double lo, double hi) {
    if (integer(0, 1) == 0) return Shape::ball(dim, point(dim, lo + 0.5, hi - 0.5), uniform(0.2, 0.6));
    Vec a = point(dim, lo, hi - 0.6), b{0, 0, 0};
    for (int k = 0; k < dim; ++k) b[k] = a[k] + uniform(0.2, 0.6);
    return Shape::box(dim, a, b);
  }

  // Union of one to three primitives inside [lo, hi]^dim; its distance is exact.
  Shape union_scene(int dim, double lo, double hi) {
    std::vector<Shape> parts;
    const int n = integer(1, 3);
    for (int i = 0; i < n; ++i) parts.push_back(primitive(dim, lo, hi));
    return n == 1 ? parts.front() : Shape::unite(std::move(parts));
  }

  // Any CSG tree of depth <= 2 (not necessarily distance-exact).
  Shape csg_scene(int dim, double lo, double hi) {
    Shape base = union_scene(dim, lo, hi);
    switch (integer(0, 2)) {
      case 0: return base;
      case 1: return Shape::intersect({base, primitive(dim, lo, hi)});
      default: return Shape::difference(base, primitive(dim, lo, hi));
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace hdgrid::proptest

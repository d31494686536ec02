#include "hdgrid/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hdgrid/errors.hpp"

namespace hdgrid {

struct Shape::Node {
  ShapeKind kind;
  int dim;
  Vec a{};  // center or lower corner
  Vec b{};  // upper corner
  double radius = 0.0;
  std::vector<Shape> children;
  bool exact_sd = false;
  bool exact_distance = false;
  bool asserted = false;
};

namespace {

constexpr double kBoundaryTol = 1e-9;

int common_dim(const std::vector<Shape>& children) {
  if (children.empty()) throw Error("CSG node needs at least one child");
  const int dim = children.front().dim();
  for (const auto& c : children)
    if (c.dim() != dim) throw Error("CSG children have mismatched dimensions");
  return dim;
}

}  // namespace

const char* to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Ball: return "ball";
    case ShapeKind::Box: return "box";
    case ShapeKind::Union: return "union";
    case ShapeKind::Intersection: return "intersection";
    case ShapeKind::Complement: return "complement";
    case ShapeKind::Difference: return "difference";
  }
  return "?";
}

Shape Shape::ball(int dim, const Vec& center, double radius) {
  if (dim < 1 || dim > kMaxDim) throw Error("shape dimension must be 1, 2 or 3");
  if (!(radius > 0.0)) throw Error("ball radius must be positive");
  auto n = std::make_shared<Node>();
  n->kind = ShapeKind::Ball;
  n->dim = dim;
  for (int k = 0; k < dim; ++k) n->a[k] = center[k];
  n->radius = radius;
  n->exact_sd = n->exact_distance = true;
  return Shape(std::move(n));
}

Shape Shape::box(int dim, const Vec& lo, const Vec& hi) {
  if (dim < 1 || dim > kMaxDim) throw Error("shape dimension must be 1, 2 or 3");
  auto n = std::make_shared<Node>();
  n->kind = ShapeKind::Box;
  n->dim = dim;
  for (int k = 0; k < dim; ++k) {
    if (!(lo[k] < hi[k])) throw Error("box needs min < max on every axis");
    n->a[k] = lo[k];
    n->b[k] = hi[k];
  }
  n->exact_sd = n->exact_distance = true;
  return Shape(std::move(n));
}

Shape Shape::unite(std::vector<Shape> children, bool assert_exact) {
  auto n = std::make_shared<Node>();
  n->kind = ShapeKind::Union;
  n->dim = common_dim(children);
  n->exact_distance = assert_exact || std::all_of(children.begin(), children.end(),
                                                  [](const Shape& c) { return c.exact_distance(); });
  n->exact_sd = assert_exact;
  n->asserted = assert_exact;
  n->children = std::move(children);
  return Shape(std::move(n));
}

Shape Shape::intersect(std::vector<Shape> children, bool assert_exact) {
  auto n = std::make_shared<Node>();
  n->kind = ShapeKind::Intersection;
  n->dim = common_dim(children);
  n->exact_sd = n->exact_distance = n->asserted = assert_exact;
  n->children = std::move(children);
  return Shape(std::move(n));
}

Shape Shape::complement(Shape child) {
  auto n = std::make_shared<Node>();
  n->kind = ShapeKind::Complement;
  n->dim = child.dim();
  n->exact_sd = n->exact_distance = child.exact_sd();
  n->children.push_back(std::move(child));
  return Shape(std::move(n));
}

Shape Shape::difference(Shape a, Shape b, bool assert_exact) {
  if (a.dim() != b.dim()) throw Error("difference operands have mismatched dimensions");
  auto n = std::make_shared<Node>();
  n->kind = ShapeKind::Difference;
  n->dim = a.dim();
  n->exact_sd = n->exact_distance = n->asserted = assert_exact;
  n->children.push_back(std::move(a));
  n->children.push_back(std::move(b));
  return Shape(std::move(n));
}

int Shape::dim() const { return node_->dim; }
ShapeKind Shape::kind() const { return node_->kind; }
bool Shape::exact_sd() const { return node_->exact_sd; }
bool Shape::exact_distance() const { return node_->exact_distance; }
bool Shape::exactness_asserted() const { return node_->asserted; }
const Vec& Shape::center() const { return node_->a; }
double Shape::radius() const { return node_->radius; }
const Vec& Shape::box_lo() const { return node_->a; }
const Vec& Shape::box_hi() const { return node_->b; }
const std::vector<Shape>& Shape::children() const { return node_->children; }

double Shape::evaluate_sd(const Vec& x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case ShapeKind::Ball: {
      double s = 0.0;
      for (int k = 0; k < n.dim; ++k) {
        const double d = x[k] - n.a[k];
        s += d * d;
      }
      return std::sqrt(s) - n.radius;
    }
    case ShapeKind::Box: {
      double outside = 0.0;
      double inside = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < n.dim; ++k) {
        const double q = std::max(n.a[k] - x[k], x[k] - n.b[k]);
        if (q > 0.0) outside += q * q;
        inside = std::max(inside, q);
      }
      return outside > 0.0 ? std::sqrt(outside) : std::min(inside, 0.0);
    }
    case ShapeKind::Union: {
      double v = std::numeric_limits<double>::infinity();
      for (const auto& c : n.children) v = std::min(v, c.evaluate_sd(x));
      return v;
    }
    case ShapeKind::Intersection: {
      double v = -std::numeric_limits<double>::infinity();
      for (const auto& c : n.children) v = std::max(v, c.evaluate_sd(x));
      return v;
    }
    case ShapeKind::Complement:
      return -n.children[0].evaluate_sd(x);
    case ShapeKind::Difference:
      return std::max(n.children[0].evaluate_sd(x), -n.children[1].evaluate_sd(x));
  }
  return 0.0;
}

std::optional<Aabb> Shape::bounds() const {
  const Node& n = *node_;
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (n.kind) {
    case ShapeKind::Ball: {
      Aabb box{{0, 0, 0}, {0, 0, 0}};
      for (int k = 0; k < n.dim; ++k) {
        box.lo[k] = n.a[k] - n.radius;
        box.hi[k] = n.a[k] + n.radius;
      }
      return box;
    }
    case ShapeKind::Box:
      return Aabb{n.a, n.b};
    case ShapeKind::Union: {
      Aabb box{{inf, inf, inf}, {-inf, -inf, -inf}};
      for (int k = n.dim; k < kMaxDim; ++k) box.lo[k] = box.hi[k] = 0.0;
      for (const auto& c : n.children) {
        const auto cb = c.bounds();
        if (!cb) return std::nullopt;
        for (int k = 0; k < n.dim; ++k) {
          box.lo[k] = std::min(box.lo[k], cb->lo[k]);
          box.hi[k] = std::max(box.hi[k], cb->hi[k]);
        }
      }
      return box;
    }
    case ShapeKind::Intersection: {
      std::optional<Aabb> box;
      for (const auto& c : n.children) {
        const auto cb = c.bounds();
        if (!cb) continue;
        if (!box) {
          box = cb;
          continue;
        }
        for (int k = 0; k < n.dim; ++k) {
          box->lo[k] = std::max(box->lo[k], cb->lo[k]);
          box->hi[k] = std::min(box->hi[k], cb->hi[k]);
        }
      }
      return box;
    }
    case ShapeKind::Complement:
      return std::nullopt;
    case ShapeKind::Difference:
      return n.children[0].bounds();
  }
  return std::nullopt;
}

PointCloudSample sample_volume(const Shape& s, double target_gap) {
  if (!(target_gap > 0.0)) throw Error("sampling gap must be positive");
  const auto box = s.bounds();
  if (!box) throw Error("cannot sample an unbounded set");
  PointCloudSample out;
  out.kind = SampleKind::Volume;
  out.resolution = target_gap;
  if (box->empty(s.dim())) throw Error("empty set");
  const int dim = s.dim();
  std::array<long long, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int k = 0; k < dim; ++k) {
    // Tolerant rounding keeps lattice points that sit exactly on the box.
    lo[k] = static_cast<long long>(std::ceil(box->lo[k] / target_gap - 1e-9));
    hi[k] = static_cast<long long>(std::floor(box->hi[k] / target_gap + 1e-9));
  }
  bool interior = false;
  for (long long k2 = lo[2]; k2 <= hi[2]; ++k2)
    for (long long k1 = lo[1]; k1 <= hi[1]; ++k1)
      for (long long k0 = lo[0]; k0 <= hi[0]; ++k0) {
        const Vec p{k0 * target_gap, k1 * target_gap, k2 * target_gap};
        const double v = s.evaluate_sd(p);
        if (v <= kBoundaryTol) out.points.push_back(p);
        if (v < -kBoundaryTol) interior = true;
      }
  // A set whose lattice points all sit on its own boundary (A \ A) is empty
  // at this resolution.
  if (!interior) throw Error("empty set");
  return out;
}

namespace {

void primitive_boundary(const Shape& s, double gap, std::vector<Vec>& out) {
  const int dim = s.dim();
  if (s.kind() == ShapeKind::Ball) {
    const Vec c = s.center();
    const double r = s.radius();
    if (dim == 1) {
      out.push_back({c[0] - r, 0, 0});
      out.push_back({c[0] + r, 0, 0});
    } else if (dim == 2) {
      const auto m = static_cast<int>(std::ceil(2.0 * std::numbers::pi * r / gap));
      for (int i = 0; i < m; ++i) {
        const double t = 2.0 * std::numbers::pi * i / m;
        out.push_back({c[0] + r * std::cos(t), c[1] + r * std::sin(t), 0});
      }
    } else {
      // Latitude rings, each sampled at arc spacing <= gap.
      const auto rings = static_cast<int>(std::ceil(std::numbers::pi * r / gap));
      for (int i = 0; i <= rings; ++i) {
        const double theta = std::numbers::pi * i / rings;
        const double rr = r * std::sin(theta);
        const double z = r * std::cos(theta);
        const int m = std::max(1, static_cast<int>(std::ceil(2.0 * std::numbers::pi * rr / gap)));
        for (int j = 0; j < m; ++j) {
          const double phi = 2.0 * std::numbers::pi * j / m;
          out.push_back({c[0] + rr * std::cos(phi), c[1] + rr * std::sin(phi), c[2] + z});
        }
      }
    }
    return;
  }
  // Box: every face is a (dim-1)-dimensional lattice including its edges.
  const Vec lo = s.box_lo();
  const Vec hi = s.box_hi();
  std::array<int, 3> steps{0, 0, 0};
  for (int k = 0; k < dim; ++k) steps[k] = std::max(1, static_cast<int>(std::ceil((hi[k] - lo[k]) / gap)));
  for (int axis = 0; axis < dim; ++axis) {
    for (int side = 0; side < 2; ++side) {
      const double fixed = side == 0 ? lo[axis] : hi[axis];
      std::array<int, 3> limit{0, 0, 0};
      for (int k = 0; k < dim; ++k) limit[k] = k == axis ? 0 : steps[k];
      for (int i2 = 0; i2 <= limit[2]; ++i2)
        for (int i1 = 0; i1 <= limit[1]; ++i1)
          for (int i0 = 0; i0 <= limit[0]; ++i0) {
            const std::array<int, 3> ii{i0, i1, i2};
            Vec p{0, 0, 0};
            for (int k = 0; k < dim; ++k)
              p[k] = k == axis ? fixed : lo[k] + (hi[k] - lo[k]) * ii[k] / steps[k];
            out.push_back(p);
          }
    }
  }
}

void collect_boundary(const Shape& s, double gap, std::vector<Vec>& out) {
  if (s.kind() == ShapeKind::Ball || s.kind() == ShapeKind::Box) {
    primitive_boundary(s, gap, out);
    return;
  }
  for (const auto& c : s.children()) collect_boundary(c, gap, out);
}

}  // namespace

PointCloudSample sample_boundary(const Shape& s, double target_gap) {
  if (!(target_gap > 0.0)) throw Error("sampling gap must be positive");
  std::vector<Vec> raw;
  collect_boundary(s, target_gap, raw);
  PointCloudSample out;
  out.kind = SampleKind::Boundary;
  out.resolution = target_gap;
  // A child boundary point is on the CSG boundary iff the combined value is 0.
  for (const auto& p : raw)
    if (std::abs(s.evaluate_sd(p)) <= kBoundaryTol) out.points.push_back(p);
  if (out.points.empty()) throw Error("empty set");
  return out;
}

std::vector<Vec> sample_closed_set(const Shape& s, double target_gap) {
  std::vector<Vec> pts = sample_volume(s, target_gap).points;
  try {
    const auto b = sample_boundary(s, target_gap).points;
    pts.insert(pts.end(), b.begin(), b.end());
  } catch (const Error&) {
    // Boundary fully hidden by CSG; the lattice alone describes the set.
  }
  return pts;
}

}  // namespace hdgrid

#pragma once

#include <optional>
#include <string>
#include <utility>

#include "hdgrid/field.hpp"
#include "hdgrid/grid.hpp"
#include "hdgrid/shapes.hpp"

namespace hdgrid {

enum class BoundKind { None, WorstCase, Suitable, External };
const char* to_string(BoundKind kind);

struct OracleResult {
  double dh = 0.0;
  double one_sided_ab = 0.0;  // sup over A of d_B
  double one_sided_ba = 0.0;  // sup over B of d_A
  // Pair realizing the larger one-sided distance: witness.first lies in the
  // set the sup runs over, witness.second is its nearest point in the other.
  std::pair<Vec, Vec> witness{};
  double error_bound = 0.0;  // 2 sqrt(n) gap
};

struct HausdorffReport {
  double d_tilde = 0.0;
  Index argmax{0, 0, 0};
  std::size_t tie_count = 0;
  std::optional<OracleResult> oracle;
  std::optional<double> upper_bound;
  BoundKind bound_kind = BoundKind::None;
};

// Grid lower bound: max over nodes of |dA - dB| for unsigned distance fields.
// Ties resolve to the lowest node index. Rejects negative (signed) input.
HausdorffReport dh_approx(const ScalarField& dA, const ScalarField& dB);

// Brute-force Hausdorff distance between lattice+boundary point clouds of
// the two closed sets. Nearest-neighbour queries use an R-tree; points lying
// in the other set contribute zero directly.
OracleResult dh_oracle(const Shape& a, const Shape& b, double gap, int threads = 1);

// Hausdorff distance between the closures of the complements, both
// restricted to bbox. Throws Error("bbox too small") when the maximizing
// point ends up on the bbox boundary.
double dh_complementary_oracle(const Shape& a, const Shape& b, double gap, const Aabb& bbox, int threads = 1);

struct SupNorm {
  double value = 0.0;
  Index argmax{0, 0, 0};
};
SupNorm sd_supnorm(const ScalarField& sdA, const ScalarField& sdB);

// max over the set of |x - y|, from the set's point cloud.
double md_oracle(const Shape& s, const Vec& x, double gap);

}  // namespace hdgrid

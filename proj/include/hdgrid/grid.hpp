#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hdgrid/vec.hpp"

namespace hdgrid {

class Shape;

// Multi-index of a node or a cell. Components past the grid dimension are 0.
// Cells follow the lattice convention where cell c is spanned by the nodes
// c - e for e in {0,1}^n, so every cell index component is >= 1.
using Index = std::array<std::int64_t, 3>;

// Uniform rectangular lattice with spacing h in dimension 1..3.
// Value type, immutable after construction.
class Grid {
 public:
  Grid(int dim, const Vec& origin, double h, const Index& counts);

  int dim() const { return dim_; }
  const Vec& origin() const { return origin_; }
  double spacing() const { return h_; }
  const Index& counts() const { return counts_; }

  std::size_t node_count() const { return node_count_; }
  std::size_t cell_count() const;

  // origin + i*h, computed per axis without accumulation.
  Vec node_position(const Index& i) const;
  Vec node_position(std::size_t linear) const { return node_position(unravel(linear)); }

  // Column-major linearization: axis 0 varies fastest.
  std::size_t linear(const Index& i) const;
  Index unravel(std::size_t linear) const;
  bool in_bounds(const Index& i) const;

  // The 2^n corner nodes of a cell, ordered by the bit pattern of the offset
  // (bit k set means the upper node along axis k).
  std::vector<Index> cell_corners(const Index& cell) const;
  bool cell_in_bounds(const Index& cell) const;
  // Cell index from its linear position in [0, cell_count()).
  Index cell_at(std::size_t linear_cell) const;

  Vec lower() const { return origin_; }
  Vec upper() const;
  bool contains(const Vec& p, double tol = 0.0) const;

  // True iff the shape's bounding box lies inside the closed grid hull.
  bool covers(const Shape& s) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.origin_ == b.origin_ && a.h_ == b.h_ && a.counts_ == b.counts_;
  }

 private:
  int dim_;
  Vec origin_;
  double h_;
  Index counts_;
  std::size_t node_count_;
};

}  // namespace hdgrid

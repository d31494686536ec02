#include "hdgrid/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hdgrid/errors.hpp"
#include "hdgrid/shapes.hpp"

namespace hdgrid {

Grid::Grid(int dim, const Vec& origin, double h, const Index& counts)
    : dim_(dim), origin_{0.0, 0.0, 0.0}, h_(h), counts_{1, 1, 1}, node_count_(1) {
  if (dim < 1 || dim > kMaxDim) throw Error("grid dimension must be 1, 2 or 3");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error("grid spacing must be positive");
  for (int k = 0; k < dim; ++k) {
    if (counts[k] < 2) throw Error("grid needs at least 2 nodes per axis");
    if (!std::isfinite(origin[k])) throw Error("grid origin must be finite");
    origin_[k] = origin[k];
    counts_[k] = counts[k];
    node_count_ *= static_cast<std::size_t>(counts[k]);
  }
}

std::size_t Grid::cell_count() const {
  std::size_t n = 1;
  for (int k = 0; k < dim_; ++k) n *= static_cast<std::size_t>(counts_[k] - 1);
  return n;
}

Vec Grid::node_position(const Index& i) const {
  if (!in_bounds(i)) throw std::out_of_range("node index out of bounds");
  Vec p{0.0, 0.0, 0.0};
  for (int k = 0; k < dim_; ++k) p[k] = origin_[k] + static_cast<double>(i[k]) * h_;
  return p;
}

bool Grid::in_bounds(const Index& i) const {
  for (int k = 0; k < kMaxDim; ++k) {
    if (k < dim_) {
      if (i[k] < 0 || i[k] >= counts_[k]) return false;
    } else if (i[k] != 0) {
      return false;
    }
  }
  return true;
}

std::size_t Grid::linear(const Index& i) const {
  if (!in_bounds(i)) throw std::out_of_range("node index out of bounds");
  std::size_t idx = 0;
  for (int k = dim_ - 1; k >= 0; --k) idx = idx * static_cast<std::size_t>(counts_[k]) + static_cast<std::size_t>(i[k]);
  return idx;
}

Index Grid::unravel(std::size_t linear) const {
  if (linear >= node_count_) throw std::out_of_range("linear node index out of bounds");
  Index i{0, 0, 0};
  for (int k = 0; k < dim_; ++k) {
    const auto c = static_cast<std::size_t>(counts_[k]);
    i[k] = static_cast<std::int64_t>(linear % c);
    linear /= c;
  }
  return i;
}

bool Grid::cell_in_bounds(const Index& cell) const {
  for (int k = 0; k < kMaxDim; ++k) {
    if (k < dim_) {
      if (cell[k] < 1 || cell[k] >= counts_[k]) return false;
    } else if (cell[k] != 0) {
      return false;
    }
  }
  return true;
}

Index Grid::cell_at(std::size_t linear_cell) const {
  if (linear_cell >= cell_count()) throw std::out_of_range("linear cell index out of bounds");
  Index c{0, 0, 0};
  for (int k = 0; k < dim_; ++k) {
    const auto n = static_cast<std::size_t>(counts_[k] - 1);
    c[k] = static_cast<std::int64_t>(linear_cell % n) + 1;
    linear_cell /= n;
  }
  return c;
}

std::vector<Index> Grid::cell_corners(const Index& cell) const {
  if (!cell_in_bounds(cell)) throw std::out_of_range("cell index out of bounds");
  std::vector<Index> corners;
  corners.reserve(std::size_t{1} << dim_);
  for (unsigned bits = 0; bits < (1u << dim_); ++bits) {
    Index node = cell;
    for (int k = 0; k < dim_; ++k)
      if (!(bits & (1u << k))) node[k] -= 1;
    corners.push_back(node);
  }
  return corners;
}

Vec Grid::upper() const {
  Vec p{0.0, 0.0, 0.0};
  for (int k = 0; k < dim_; ++k) p[k] = origin_[k] + static_cast<double>(counts_[k] - 1) * h_;
  return p;
}

bool Grid::contains(const Vec& p, double tol) const {
  const Vec hi = upper();
  for (int k = 0; k < dim_; ++k)
    if (p[k] < origin_[k] - tol || p[k] > hi[k] + tol) return false;
  return true;
}

bool Grid::covers(const Shape& s) const {
  if (s.dim() != dim_) return false;
  const auto box = s.bounds();
  if (!box) return false;
  if (box->empty(dim_)) return true;
  return contains(box->lo) && contains(box->hi);
}

}  // namespace hdgrid

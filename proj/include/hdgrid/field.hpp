#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hdgrid/grid.hpp"
#include "hdgrid/shapes.hpp"

namespace hdgrid {

// One real value per grid node, stored in the grid's column-major order.
class ScalarField {
 public:
  ScalarField(Grid grid, std::vector<double> values);
  ScalarField(Grid grid, double fill);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(const Index& i) const { return values_[grid_.linear(i)]; }
  std::size_t size() const { return values_.size(); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Exact signed distance at every node. Requires shape.exact_sd() and a grid
// that covers the shape.
ScalarField sample_exact_sd(const Grid& g, const Shape& s);

// Exact unsigned distance max(sd, 0). Requires shape.exact_distance().
ScalarField sample_exact_distance(const Grid& g, const Shape& s);

// The shape's level-set values at every node, exact or not.
ScalarField sample_level_set(const Grid& g, const Shape& s);

// First-order upwind Fast Marching redistancing. The zero level set is located
// by linear interpolation along sign-changing grid edges; both sides are then
// marched outward with a binary heap (ties broken by node index). Nodes with
// phi <= 0 come out with non-positive values. Throws Error("no interface")
// when phi does not change sign.
ScalarField fast_march(const ScalarField& phi);

// max(sd, 0): distance to the set.
ScalarField positive_part(const ScalarField& sd);
// max(-sd, 0): distance to the complement.
ScalarField negative_part(const ScalarField& sd);

// CSV with header index,x[,y[,z]],value.
void write_field_csv(std::ostream& os, const ScalarField& f);

// Binary layout, little-endian:
//   "HDFLD01\0" | u64 dim | u64 counts[dim] | f64 origin[dim] | f64 h | f64 values[N]
// values in column-major order (axis 0 fastest).
void write_field_binary(std::ostream& os, const ScalarField& f);
ScalarField read_field_binary(std::istream& is);

}  // namespace hdgrid

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hdgrid/field.hpp"
#include "hdgrid/grid.hpp"
#include "hdgrid/hausdorff.hpp"
#include "hdgrid/shapes.hpp"

namespace hdgrid {

// Lipschitz-weighted distance from a grid node x to y: |x-y| when x lies in
// the set, 2|x-y| otherwise.
double lipschitz_t(const Vec& x, const Vec& y, bool x_in_set);

// Sampled approximation of the per-cell upper bound
//   sup_{y in cell} min_{corners x} ( |dA(x) - dB(x)| + t(x, y) )
// over an m^n lattice of the closed cell. Not a certified bound: it converges
// to the supremum from below as m grows.
double cell_upper_bound_sampled(const Grid& g, const Index& cell, const ScalarField& dA, const ScalarField& dB,
                                const std::vector<bool>& corner_in_set, int m);

// max(sampled A->B cell bound, sampled B->A cell bound) over all cells;
// membership from the unsigned fields (d == 0). Non-certified.
double general_upper_bound_sampled(const ScalarField& dA, const ScalarField& dB, int m);

// d_tilde + sqrt(n) h
double worst_case_bound(const HausdorffReport& report, const Grid& g);

// d_tilde + Delta_n h when the grid is suitable for both sets.
std::optional<double> suitable_bound(const HausdorffReport& report, const Grid& g, bool suitable);

// Scans every cell whose corners all lie outside the set and looks for a
// point of the set inside it on a lattice of pitch <= gap. False on the first
// hit. Cells far from the set are skipped using the distance when it is exact.
bool check_suitable(const Grid& g, const Shape& s, double gap);

struct DeltaConstant {
  int dim = 0;
  double value = 0.0;
  Vec maximizer{0, 0, 0};
};

// Closed forms: 2/3, (2/3) sqrt(5 - sqrt 7), (2/3) sqrt(8 - sqrt 19).
double delta_closed_form(int dim);

// Maximizes F(y) = min(|y|, min over non-origin cube corners x of 2|x - y|)
// over the unit cube from `starts` seeded random starting points, each
// refined by a trust-region sequential LP on the active pieces of F.
DeltaConstant compute_delta(int dim, int starts = 64, std::uint64_t seed = 0x5eed);

// F as defined above; exposed for tests.
double delta_objective(int dim, const Vec& y);

// Node-exact distance fields for the sharp two-dimensional configuration in
// which the suitable-grid bound is attained. Node b sits at the origin, a at
// (h,0), c at (0,h), d at (h,h); A excludes open discs of radius r/2 around a
// and d, B excludes the open disc of radius r + rho around
// p = ((8 - sqrt 7)/6, 1/2) h, with r = Delta_2 h.
struct MaximalErrorScene {
  Grid grid;
  ScalarField dA;
  ScalarField dB;
  Shape a;  // the same sets, clipped to the grid box, for oracle checks
  Shape b;
  Vec p;
  double r = 0.0;
  double rho = 0.0;
  double expected_d_tilde = 0.0;
  double expected_dh = 0.0;
};
MaximalErrorScene build_maximal_error_scene(double h, double rho);

struct ExternalCert {
  Vec x{0, 0, 0};
  Vec y{0, 0, 0};
  Vec direction{0, 0, 0};  // (x - y) / |x - y|
  double r = 0.0;
  Vec c{0, 0, 0};  // x + r d
  double R = 0.0;  // r + |x - y|
  bool admissible = false;
  double slack = 0.0;
  double tolerance = 0.0;
};

// Checks the empty-ball conditions  B(c, r) meets A only at x  and
// B(c, R) meets B only at y  against point clouds of pitch gap, with
// tolerance 2 gap. The witness must realize the one-sided A->B distance.
ExternalCert certify_external(const Shape& a, const Shape& b, const Vec& x, const Vec& y, double r, double gap);

// sqrt(n h^2 + (r - sqrt(n) h)^2) - (r - sqrt(n) h); requires h < r / sqrt(n).
double external_bound_term(int dim, double h, double r);

// d_tilde + external_bound_term, after checking admissibility and that the
// grid contains the segment from x to c.
double external_bound(const HausdorffReport& report, const ExternalCert& cert, const Grid& g);

}  // namespace hdgrid

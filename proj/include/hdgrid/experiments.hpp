#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hdgrid/field.hpp"
#include "hdgrid/grid.hpp"
#include "hdgrid/shapes.hpp"
#include "hdgrid/stochastic.hpp"

namespace hdgrid {

// Outer ball of radius `outer` with a concentric cavity of radius
// outer - width, plus an inner ball of radius `inner` placed in the cavity.
struct RingParams {
  double outer = 9.0;
  double width = 1.0;
  double inner = 1.0;
  double cavity() const { return outer - width; }
};

struct CircleInRingScene {
  int dim = 2;
  Vec displacement{0, 0, 0};
  RingParams params;
  Shape a;  // ring united with the inner ball
  Shape b;  // ring
  double dh = 0.0;
  Vec witness_x{0, 0, 0};  // point of A farthest from B
  Vec witness_y{0, 0, 0};  // its nearest point in B
  // Largest admissible radius of the external ball condition; set only when
  // the witness lies on the boundary of A.
  std::optional<double> max_r;
};

CircleInRingScene scene_circle_in_ring(int dim, const Vec& displacement, const RingParams& params = {});

// Grid covering the outer ball whose nodes sit at (j - K - 1/2 + offset_k) h.
// With a zero offset the origin is the centre of a cell.
Grid ring_grid(int dim, double h, const Vec& offset, const RingParams& params = {});

enum class FieldSource { ExactSd, Fmm };
const char* to_string(FieldSource source);
FieldSource parse_field_source(const std::string& text);

struct RunRecord {
  std::int64_t run_id = 0;
  std::uint64_t seed = 0;
  int dim = 2;
  double h = 0.0;
  Vec displacement{0, 0, 0};
  double d_exact = 0.0;
  double d_tilde = 0.0;
  double delta = 0.0;  // d_exact - d_tilde
  double bound = 0.0;  // reference upper bound on delta
  FieldSource source = FieldSource::ExactSd;
};

// Unsigned distance fields of the scene's sets on g: exact evaluation or fast
// marching from quadratic level-set functions with the same zero sets.
std::pair<ScalarField, ScalarField> scene_fields(const CircleInRingScene& scene, const Grid& g, FieldSource source);

// Reference bound on delta: the external-ball term when the witness admits one
// and h is small enough, otherwise Delta_n h; the smaller of the two if both apply.
double reference_bound(const CircleInRingScene& scene, double h);

RunRecord run_scene(const CircleInRingScene& scene, const Grid& g, FieldSource source, std::int64_t run_id = 0,
                    std::uint64_t seed = 0);

struct OrderFit {
  std::vector<std::pair<double, double>> points;  // (h, delta) as given
  double slope = 0.0;
  double intercept = 0.0;
  int dropped = 0;  // points with delta <= 0
};

// Least squares of log(delta) against log(h) over the points with delta > 0.
// Throws Error when fewer than three usable points remain.
OrderFit fit_order(const std::vector<std::pair<double, double>>& points);

std::vector<RunRecord> sweep_displacement(int dim, double h, const std::vector<Vec>& displacements,
                                          FieldSource source, const RingParams& params = {}, int threads = 1);

struct SweepResult {
  std::vector<RunRecord> records;
  OrderFit fit;
};

// h_list must hold at least three strictly decreasing spacings. The fit uses
// |delta| so that slightly negative errors from fast marching still count.
SweepResult sweep_h(int dim, const Vec& displacement, const std::vector<double>& h_list, FieldSource source,
                    const RingParams& params = {}, int threads = 1);

struct EnsembleOptions {
  double displacement = 3.0;  // distance of the inner ball from the origin
  double slope_bin_width = 0.25;
  RingParams params;
  FieldSource source = FieldSource::ExactSd;
};

struct EnsembleResult {
  std::vector<RunRecord> records;         // run-major, then h in list order
  std::vector<std::optional<OrderFit>> fits;  // one per run; empty if the fit failed
  Histogram slope_histogram;
  double median_slope = 0.0;
  double fraction_above_two = 0.0;        // over runs with a fit
  std::vector<double> geometric_mean;     // of positive deltas, per h
  int failed_fits = 0;
};

// Each run draws a uniform grid offset in [0, 1)^n (in units of h, shared by
// all spacings of the run) and a uniform random direction for the inner ball.
EnsembleResult randomized_ensemble(int dim, int runs, const std::vector<double>& h_list, std::uint64_t seed,
                                   const EnsembleOptions& options = {}, int threads = 1);

// Geometric sequence of `count` spacings from `first` down to `last`.
std::vector<double> geometric_spacings(double first, double last, int count);

void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records);
// Whitespace-separated columns with a commented header, readable by gnuplot.
void write_records_gnuplot(std::ostream& os, const std::vector<RunRecord>& records);
void write_histogram_csv(std::ostream& os, const Histogram& hist);

}  // namespace hdgrid

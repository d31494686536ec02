#pragma once

#include <cstdint>
#include <vector>

#include "hdgrid/grid.hpp"
#include "hdgrid/vec.hpp"

namespace hdgrid {

struct Segment {
  Vec p{0, 0, 0};
  Vec q{0, 0, 0};
};

struct SegmentProbe {
  Segment segment;
  double beta = 0.0;          // min over grid nodes of the node-to-segment distance
  std::int64_t edges_crossed = 0;
};

// Both endpoints must lie in the grid hull. A crossing is counted for every
// grid hyperplane the closed segment touches, which errs on the side of more
// crossings when the segment grazes a face.
SegmentProbe probe_segment(const Grid& g, const Segment& segment);

// Part of the external line between x + 3/8 r d and x + 5/8 r d.
Segment middle_segment(const Vec& x, const Vec& direction, double r);

// Upper bound 3 beta^2 / r on the approximation error for an external scene.
double beta_error_bound(double beta, double r);

struct IterateAnalysis {
  long double x0 = 0;
  long double k = 0;
  std::int64_t N = 0;
  bool rational = false;  // two of the first N+1 iterates coincide to ~1e-13
  long double epsilon = 0;
  std::int64_t i0 = 0;
  std::int64_t j0 = 0;
  bool found = false;     // an iterate with frac <= epsilon was found within K_bound
  std::int64_t m = -1;    // first such index
  std::int64_t K_bound = 0;  // |j0 - i0| * ceil(1/epsilon), never above 2/epsilon^2
};

// Iterates x_i = frac(x0 + i k). Finds the closest pair among the first N+1
// iterates, then the first index m whose iterate does not exceed that gap.
IterateAnalysis analyze_iterates(long double x0, long double k, std::int64_t N);

// Closed-form expectation N sqrt(n-1) B(n/(n-1), N) of the minimum of N
// uniform draws on the sector model, via log-gamma.
double expected_min_distance(int n, std::int64_t N);

struct MonteCarloEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t trials = 0;
};

// Each trial draws N radii sqrt(n-1) U^(1/(n-1)) and keeps the smallest. The
// trial's generator is seeded from (seed, trial, N, n) so the result does not
// depend on the thread count.
MonteCarloEstimate simulate_min_distance(int n, std::int64_t N, std::int64_t trials, std::uint64_t seed,
                                         int threads = 1);

struct Histogram {
  std::vector<double> edges;  // bins + 1 ascending values
  std::vector<std::int64_t> counts;
  std::int64_t total() const;
};

// Equal-width bins on [lo, hi); values outside are clamped into the end bins.
Histogram make_histogram(const std::vector<double>& values, double lo, double hi, int bins);

struct UniformityReport {
  Histogram histogram;
  double chi_square = 0.0;
  double max_relative_deviation = 0.0;  // max |count - mean| / mean
};

UniformityReport uniformity_histogram(long double x0, long double k, std::int64_t count, int bins);

}  // namespace hdgrid

#include "hdgrid/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hdgrid/errors.hpp"
#include "hdgrid/parallel.hpp"

namespace hdgrid {

SegmentProbe probe_segment(const Grid& g, const Segment& segment) {
  const double tol = 1e-12 * std::max(1.0, g.spacing());
  if (!g.contains(segment.p, tol) || !g.contains(segment.q, tol)) throw Error("segment outside grid hull");
  const int dim = g.dim();
  const double h = g.spacing();
  const double reach = 0.5 * std::sqrt(static_cast<double>(dim)) * h;

  // Every point of the segment has a node within half a cell diagonal, so only
  // nodes in the correspondingly padded bounding box can be nearest.
  Index lo{0, 0, 0}, hi{0, 0, 0};
  SegmentProbe out{segment, std::numeric_limits<double>::infinity(), 0};
  for (int k = 0; k < dim; ++k) {
    const double a = std::min(segment.p[k], segment.q[k]);
    const double b = std::max(segment.p[k], segment.q[k]);
    lo[k] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((a - reach - g.origin()[k]) / h)));
    hi[k] = std::min<std::int64_t>(g.counts()[k] - 1,
                                   static_cast<std::int64_t>(std::ceil((b + reach - g.origin()[k]) / h)));
    // Grid planes x_k = origin + j h inside the closed coordinate range.
    const std::int64_t first = static_cast<std::int64_t>(std::ceil((a - g.origin()[k]) / h - 1e-12));
    const std::int64_t last = static_cast<std::int64_t>(std::floor((b - g.origin()[k]) / h + 1e-12));
    const std::int64_t f = std::max<std::int64_t>(first, 0);
    const std::int64_t l = std::min<std::int64_t>(last, g.counts()[k] - 1);
    if (l >= f) out.edges_crossed += l - f + 1;
  }
  Index i{0, 0, 0};
  for (i[2] = lo[2]; i[2] <= hi[2]; ++i[2])
    for (i[1] = lo[1]; i[1] <= hi[1]; ++i[1])
      for (i[0] = lo[0]; i[0] <= hi[0]; ++i[0])
        out.beta = std::min(out.beta, segment_distance(g.node_position(i), segment.p, segment.q));
  return out;
}

Segment middle_segment(const Vec& x, const Vec& direction, double r) {
  return {x + (0.375 * r) * direction, x + (0.625 * r) * direction};
}

double beta_error_bound(double beta, double r) {
  if (!(r > 0.0)) throw Error("radius must be positive");
  return 3.0 / r * beta * beta;
}

namespace {

long double frac(long double v) { return v - std::floor(v); }

}  // namespace

IterateAnalysis analyze_iterates(long double x0, long double k, std::int64_t N) {
  if (N < 1) throw Error("N must be at least 1");
  IterateAnalysis out;
  out.x0 = x0;
  out.k = k;
  out.N = N;
  const auto iterate = [&](std::int64_t i) { return frac(x0 + static_cast<long double>(i) * k); };

  std::vector<std::pair<long double, std::int64_t>> xs;
  xs.reserve(static_cast<std::size_t>(N) + 1);
  for (std::int64_t i = 0; i <= N; ++i) xs.emplace_back(iterate(i), i);
  std::sort(xs.begin(), xs.end());
  long double best = std::numeric_limits<long double>::infinity();
  for (std::size_t s = 1; s < xs.size(); ++s) {
    const long double gap = xs[s].first - xs[s - 1].first;
    if (gap < best) {
      best = gap;
      out.i0 = std::min(xs[s].second, xs[s - 1].second);
      out.j0 = std::max(xs[s].second, xs[s - 1].second);
    }
  }
  out.epsilon = best;
  if (best < 1e-13L) {
    out.rational = true;
    return out;
  }

  // Stepping by p = j0 - i0 moves the fractional part by exactly +-epsilon,
  // so within ceil(1/epsilon) such steps an iterate lands in [0, epsilon].
  const std::int64_t p = out.j0 - out.i0;
  out.K_bound = p * static_cast<std::int64_t>(std::ceil(1.0L / best));
  const long double tol = 1e-12L;
  for (std::int64_t m = 0; m <= out.K_bound; ++m) {
    if (iterate(m) <= best + tol) {
      out.found = true;
      out.m = m;
      break;
    }
  }
  return out;
}

double expected_min_distance(int n, std::int64_t N) {
  if (n != 2 && n != 3) throw Error("sector model is defined for n = 2 or 3");
  if (N < 1) throw Error("N must be at least 1");
  const double a = static_cast<double>(n) / (n - 1);
  const double dn = static_cast<double>(N);
  const double log_beta = std::lgamma(a) + std::lgamma(dn) - std::lgamma(a + dn);
  return dn * std::sqrt(static_cast<double>(n - 1)) * std::exp(log_beta);
}

MonteCarloEstimate simulate_min_distance(int n, std::int64_t N, std::int64_t trials, std::uint64_t seed,
                                         int threads) {
  if (n != 2 && n != 3) throw Error("sector model is defined for n = 2 or 3");
  if (N < 1) throw Error("N must be at least 1");
  if (trials < 1) throw Error("trials must be at least 1");
  const double scale = std::sqrt(static_cast<double>(n - 1));
  const double expo = 1.0 / (n - 1);
  std::vector<double> ys(static_cast<std::size_t>(trials));
  parallel_chunks(ys.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t t = begin; t < end; ++t) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32), static_cast<std::uint32_t>(N),
                        static_cast<std::uint32_t>(n)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      double y = std::numeric_limits<double>::infinity();
      for (std::int64_t j = 0; j < N; ++j) y = std::min(y, scale * std::pow(unif(rng), expo));
      ys[t] = y;
    }
  });
  // Summation in trial order keeps the result independent of the partition.
  double sum = 0.0;
  for (double y : ys) sum += y;
  const double mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (double y : ys) ss += (y - mean) * (y - mean);
  const double var = trials > 1 ? ss / static_cast<double>(trials - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(trials)), trials};
}

std::int64_t Histogram::total() const {
  std::int64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

Histogram make_histogram(const std::vector<double>& values, double lo, double hi, int bins) {
  if (bins < 1) throw Error("need at least one bin");
  if (!(hi > lo)) throw Error("histogram range is empty");
  Histogram out;
  out.counts.assign(static_cast<std::size_t>(bins), 0);
  const double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) out.edges.push_back(b == bins ? hi : lo + b * width);
  for (double v : values) {
    auto b = static_cast<std::int64_t>(std::floor((v - lo) / width));
    b = std::clamp<std::int64_t>(b, 0, bins - 1);
    ++out.counts[static_cast<std::size_t>(b)];
  }
  return out;
}

UniformityReport uniformity_histogram(long double x0, long double k, std::int64_t count, int bins) {
  if (bins < 1) throw Error("need at least one bin");
  if (count < bins) throw Error("count must be at least the number of bins");
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) xs.push_back(static_cast<double>(frac(x0 + static_cast<long double>(i) * k)));
  UniformityReport out;
  out.histogram = make_histogram(xs, 0.0, 1.0, bins);
  const double expected = static_cast<double>(count) / bins;
  for (auto c : out.histogram.counts) {
    const double d = static_cast<double>(c) - expected;
    out.chi_square += d * d / expected;
    out.max_relative_deviation = std::max(out.max_relative_deviation, std::abs(d) / expected);
  }
  return out;
}

}  // namespace hdgrid

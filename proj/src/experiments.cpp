#include "hdgrid/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "hdgrid/bounds.hpp"
#include "hdgrid/errors.hpp"
#include "hdgrid/format.hpp"
#include "hdgrid/hausdorff.hpp"
#include "hdgrid/parallel.hpp"

namespace hdgrid {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 3) throw Error("circle-in-ring scenes exist in 2 or 3 dimensions");
}

Vec unit_or(const Vec& v, const Vec& fallback) {
  const double n = norm(v);
  return n > 0.0 ? (1.0 / n) * v : fallback;
}

}  // namespace

CircleInRingScene scene_circle_in_ring(int dim, const Vec& displacement, const RingParams& params) {
  check_dim(dim);
  if (!(params.inner > 0.0) || !(params.width > 0.0) || !(params.cavity() > 0.0))
    throw Error("ring parameters must be positive with width < outer radius");
  for (int k = dim; k < kMaxDim; ++k)
    if (displacement[k] != 0.0) throw Error("displacement has components beyond the dimension");
  const double off = norm(displacement);
  if (!(off + params.inner < params.cavity())) throw Error("invalid displacement: inner ball must stay inside the cavity");

  const Vec origin{0, 0, 0};
  // Concentric annulus and a union of disjoint pieces: both signed distances are exact.
  Shape ring = Shape::difference(Shape::ball(dim, origin, params.outer), Shape::ball(dim, origin, params.cavity()), true);
  Shape a = Shape::unite({ring, Shape::ball(dim, displacement, params.inner)}, true);
  CircleInRingScene s{dim, displacement, params, std::move(a), std::move(ring), 0.0, origin, origin, std::nullopt};
  s.dh = params.cavity() - std::max(0.0, off - params.inner);
  const Vec dir = unit_or(displacement, Vec{1, 0, 0});
  if (off > params.inner) {
    s.witness_x = (1.0 - params.inner / off) * displacement;
    s.max_r = off - params.inner;
  } else {
    s.witness_x = origin;
  }
  s.witness_y = params.cavity() * dir;
  return s;
}

Grid ring_grid(int dim, double h, const Vec& offset, const RingParams& params) {
  check_dim(dim);
  if (!(h > 0.0)) throw Error("grid spacing must be positive");
  const auto K = static_cast<std::int64_t>(std::ceil(params.outer / h + 0.5));
  Vec origin{0, 0, 0};
  Index counts{1, 1, 1};
  for (int k = 0; k < dim; ++k) {
    if (offset[k] < 0.0 || offset[k] >= 1.0) throw Error("grid offset must lie in [0, 1)");
    origin[k] = (static_cast<double>(-K) - 0.5 + offset[k]) * h;
    counts[k] = 2 * K + 2;
  }
  return Grid(dim, origin, h, counts);
}

const char* to_string(FieldSource source) { return source == FieldSource::ExactSd ? "exact_sd" : "fmm"; }

FieldSource parse_field_source(const std::string& text) {
  if (text == "exact_sd" || text == "exact") return FieldSource::ExactSd;
  if (text == "fmm") return FieldSource::Fmm;
  throw ConfigError("unknown field source '" + text + "'");
}

std::pair<ScalarField, ScalarField> scene_fields(const CircleInRingScene& scene, const Grid& g, FieldSource source) {
  if (g.dim() != scene.dim) throw Error("grid and scene dimensions differ");
  if (source == FieldSource::ExactSd) return {sample_exact_distance(g, scene.a), sample_exact_distance(g, scene.b)};

  // Quadratic level-set functions: correct zero sets and unit gradient on the
  // boundary, but not distance functions away from it.
  const auto quad = [](const Vec& x, const Vec& c, double r) {
    const Vec d = x - c;
    return (dot(d, d) - r * r) / (2.0 * r);
  };
  const Vec origin{0, 0, 0};
  const RingParams& p = scene.params;
  std::vector<double> pa(g.node_count()), pb(g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const Vec x = g.node_position(i);
    const double ring = std::max(quad(x, origin, p.outer), -quad(x, origin, p.cavity()));
    pb[i] = ring;
    pa[i] = std::min(ring, quad(x, scene.displacement, p.inner));
  }
  return {positive_part(fast_march(ScalarField(g, std::move(pa)))),
          positive_part(fast_march(ScalarField(g, std::move(pb))))};
}

double reference_bound(const CircleInRingScene& scene, double h) {
  double bound = delta_closed_form(scene.dim) * h;
  if (scene.max_r && h < *scene.max_r / std::sqrt(static_cast<double>(scene.dim)))
    bound = std::min(bound, external_bound_term(scene.dim, h, *scene.max_r));
  return bound;
}

RunRecord run_scene(const CircleInRingScene& scene, const Grid& g, FieldSource source, std::int64_t run_id,
                    std::uint64_t seed) {
  const auto [dA, dB] = scene_fields(scene, g, source);
  const HausdorffReport rep = dh_approx(dA, dB);
  RunRecord r;
  r.run_id = run_id;
  r.seed = seed;
  r.dim = scene.dim;
  r.h = g.spacing();
  r.displacement = scene.displacement;
  r.d_exact = scene.dh;
  r.d_tilde = rep.d_tilde;
  r.delta = scene.dh - rep.d_tilde;
  r.bound = reference_bound(scene, g.spacing());
  r.source = source;
  return r;
}

OrderFit fit_order(const std::vector<std::pair<double, double>>& points) {
  OrderFit fit;
  fit.points = points;
  std::vector<std::pair<double, double>> logs;
  for (const auto& [h, delta] : points) {
    if (!(h > 0.0)) throw Error("grid spacings must be positive");
    if (delta > 0.0)
      logs.emplace_back(std::log(h), std::log(delta));
    else
      ++fit.dropped;
  }
  if (logs.size() < 3) throw Error("order fit needs at least three positive errors");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(logs.size());
  my /= static_cast<double>(logs.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw Error("order fit needs distinct grid spacings");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

std::vector<RunRecord> sweep_displacement(int dim, double h, const std::vector<Vec>& displacements,
                                          FieldSource source, const RingParams& params, int threads) {
  std::vector<RunRecord> out(displacements.size());
  const Grid g = ring_grid(dim, h, Vec{0, 0, 0}, params);
  parallel_chunks(displacements.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i)
      out[i] = run_scene(scene_circle_in_ring(dim, displacements[i], params), g, source, static_cast<std::int64_t>(i));
  });
  return out;
}

namespace {

void check_spacings(const std::vector<double>& h_list) {
  if (h_list.size() < 3) throw Error("need at least three grid spacings");
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    if (!(h_list[i] > 0.0)) throw Error("grid spacings must be positive");
    if (i > 0 && !(h_list[i] < h_list[i - 1])) throw Error("grid spacings must be strictly decreasing");
  }
}

}  // namespace

SweepResult sweep_h(int dim, const Vec& displacement, const std::vector<double>& h_list, FieldSource source,
                    const RingParams& params, int threads) {
  check_spacings(h_list);
  const CircleInRingScene scene = scene_circle_in_ring(dim, displacement, params);
  SweepResult res;
  res.records.resize(h_list.size());
  parallel_chunks(h_list.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i)
      res.records[i] = run_scene(scene, ring_grid(dim, h_list[i], Vec{0, 0, 0}, params), source,
                                 static_cast<std::int64_t>(i));
  });
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : res.records) pts.emplace_back(r.h, std::abs(r.delta));
  res.fit = fit_order(pts);
  return res;
}

std::vector<double> geometric_spacings(double first, double last, int count) {
  if (count < 2) throw Error("need at least two spacings");
  if (!(first > last) || !(last > 0.0)) throw Error("spacings must decrease from first to last > 0");
  std::vector<double> out;
  const double ratio = std::pow(last / first, 1.0 / (count - 1));
  for (int i = 0; i < count; ++i) out.push_back(i == count - 1 ? last : first * std::pow(ratio, i));
  return out;
}

EnsembleResult randomized_ensemble(int dim, int runs, const std::vector<double>& h_list, std::uint64_t seed,
                                   const EnsembleOptions& options, int threads) {
  check_dim(dim);
  if (runs < 1) throw Error("need at least one run");
  check_spacings(h_list);
  const std::size_t nh = h_list.size();
  EnsembleResult res;
  res.records.resize(static_cast<std::size_t>(runs) * nh);
  res.fits.resize(static_cast<std::size_t>(runs));

  parallel_chunks(static_cast<std::size_t>(runs), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t run = begin; run < end; ++run) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(run >> 32)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      std::normal_distribution<double> gauss(0.0, 1.0);
      Vec dir{0, 0, 0};
      do {
        for (int k = 0; k < dim; ++k) dir[k] = gauss(rng);
      } while (norm(dir) < 1e-12);
      dir = (options.displacement / norm(dir)) * dir;
      Vec offset{0, 0, 0};
      for (int k = 0; k < dim; ++k) offset[k] = unif(rng);

      const CircleInRingScene scene = scene_circle_in_ring(dim, dir, options.params);
      std::vector<std::pair<double, double>> pts;
      for (std::size_t j = 0; j < nh; ++j) {
        const Grid g = ring_grid(dim, h_list[j], offset, options.params);
        RunRecord r = run_scene(scene, g, options.source, static_cast<std::int64_t>(run), seed);
        pts.emplace_back(r.h, std::abs(r.delta));
        res.records[run * nh + j] = r;
      }
      try {
        res.fits[run] = fit_order(pts);
      } catch (const Error&) {
        res.fits[run] = std::nullopt;
      }
    }
  });

  std::vector<double> slopes;
  for (const auto& f : res.fits) {
    if (f)
      slopes.push_back(f->slope);
    else
      ++res.failed_fits;
  }
  if (!slopes.empty()) {
    std::vector<double> sorted = slopes;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    res.median_slope = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    const auto above = std::count_if(sorted.begin(), sorted.end(), [](double s) { return s > 2.0; });
    res.fraction_above_two = static_cast<double>(above) / static_cast<double>(n);
    const double w = options.slope_bin_width;
    const double lo = std::floor(sorted.front() / w) * w;
    double hi = std::ceil(sorted.back() / w) * w;
    if (hi <= sorted.back()) hi += w;
    res.slope_histogram = make_histogram(slopes, lo, hi, static_cast<int>(std::lround((hi - lo) / w)));
  }
  for (std::size_t j = 0; j < nh; ++j) {
    double sum = 0.0;
    int count = 0;
    for (int run = 0; run < runs; ++run) {
      const double d = std::abs(res.records[static_cast<std::size_t>(run) * nh + j].delta);
      if (d > 0.0) {
        sum += std::log(d);
        ++count;
      }
    }
    res.geometric_mean.push_back(count ? std::exp(sum / count) : 0.0);
  }
  return res;
}

namespace {

void write_records(std::ostream& os, const std::vector<RunRecord>& records, const char* sep, const char* lead) {
  static const char* const cols[] = {"run_id", "seed",  "dim",     "h",     "disp_x", "disp_y",
                                     "disp_z", "d_exact", "d_tilde", "delta", "bound",  "source"};
  os << lead;
  for (std::size_t i = 0; i < std::size(cols); ++i) os << (i ? sep : "") << cols[i];
  os << '\n';
  for (const auto& r : records) {
    os << r.run_id << sep << r.seed << sep << r.dim << sep << format_double(r.h);
    for (int k = 0; k < kMaxDim; ++k) os << sep << format_double(r.displacement[k]);
    os << sep << format_double(r.d_exact) << sep << format_double(r.d_tilde) << sep << format_double(r.delta) << sep
       << format_double(r.bound) << sep << to_string(r.source) << '\n';
  }
}

}  // namespace

void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records) { write_records(os, records, ",", ""); }

void write_records_gnuplot(std::ostream& os, const std::vector<RunRecord>& records) {
  write_records(os, records, " ", "# ");
}

void write_histogram_csv(std::ostream& os, const Histogram& hist) {
  os << "bin_low,bin_high,count\n";
  for (std::size_t b = 0; b < hist.counts.size(); ++b)
    os << format_double(hist.edges[b]) << ',' << format_double(hist.edges[b + 1]) << ',' << hist.counts[b] << '\n';
}

}  // namespace hdgrid

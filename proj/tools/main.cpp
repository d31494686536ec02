#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "hdgrid/bounds.hpp"
#include "hdgrid/errors.hpp"
#include "hdgrid/experiments.hpp"
#include "hdgrid/field.hpp"
#include "hdgrid/format.hpp"
#include "hdgrid/hausdorff.hpp"
#include "hdgrid/stochastic.hpp"

namespace {

using namespace hdgrid;
using cli::json;

struct Common {
  std::string config;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  std::string format;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "Run configuration (JSON)")->check(CLI::ExistingFile);
  app->add_option("--seed", c.seed, "Random seed (unsigned 64-bit)");
  app->add_option("--threads", c.threads, "Worker threads (default: $HAUSDORFF_GRID_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", c.out, "Output file (default: standard output)");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json", "gnuplot", "binary"}));
}

// Resolved settings shared by every subcommand.
struct Context {
  std::string name;
  cli::RunConfig config;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  std::string format;
  CLI::App* app = nullptr;

  bool given(const char* flag) const { return app->count(flag) > 0; }

  // Flag value if given, else the config parameter, else the default.
  template <typename T>
  T pick(const char* flag, const char* key, const T& flag_value, const T& fallback) const {
    if (given(flag)) return flag_value;
    return cli::param(config.parameters, key, fallback);
  }
};

int resolve_threads(const Common& c, bool flag_given) {
  if (flag_given) return c.threads;
  if (const char* env = std::getenv("HAUSDORFF_GRID_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ConfigError("HAUSDORFF_GRID_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  return 1;
}

Context make_context(const std::string& name, CLI::App* app, const Common& c,
                     std::initializer_list<const char*> param_keys, const std::string& default_format,
                     std::initializer_list<const char*> formats) {
  Context ctx;
  ctx.name = name;
  ctx.app = app;
  if (!c.config.empty()) ctx.config = cli::load_config(c.config);
  if (!ctx.config.operation.empty() && ctx.config.operation != name)
    throw ConfigError("config operation '" + ctx.config.operation + "' does not match subcommand '" + name + "'");
  cli::require_keys(ctx.config.parameters, param_keys, "parameters");
  ctx.seed = app->count("--seed") ? c.seed : ctx.config.seed.value_or(c.seed);
  ctx.threads = resolve_threads(c, app->count("--threads") > 0);
  ctx.out = !c.out.empty() ? c.out : ctx.config.output.value("data", std::string());
  ctx.format = c.format.empty() ? default_format : c.format;
  if (std::find(formats.begin(), formats.end(), ctx.format) == formats.end())
    throw ConfigError("format '" + ctx.format + "' is not supported by " + name);
  return ctx;
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open output file '" + path + "'");
  f << data;
  if (!f) throw Error("failed writing '" + path + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

cli::Scene require_scene(const Context& ctx, bool need_b) {
  if (ctx.config.scene.is_null()) throw ConfigError(ctx.name + " needs a config with a scene");
  cli::Scene s = cli::parse_scene(ctx.config.scene);
  if (need_b && !s.b) throw ConfigError(ctx.name + " needs both sets a and b");
  return s;
}

Grid require_grid(const Context& ctx, const cli::Scene& s) {
  if (ctx.config.grid.is_null()) throw ConfigError(ctx.name + " needs a config with a grid");
  Grid g = cli::parse_grid(ctx.config.grid, s);
  if (s.a && s.a->dim() != g.dim()) throw ConfigError("grid and scene dimensions differ");
  return g;
}

ScalarField distance_field(const Grid& g, const Shape& s, FieldSource source) {
  if (source == FieldSource::ExactSd) return sample_exact_distance(g, s);
  return positive_part(fast_march(sample_level_set(g, s)));
}

HausdorffReport compute_report(const Context& ctx, const cli::Scene& s, const Grid& g) {
  const FieldSource source = parse_field_source(cli::param<std::string>(ctx.config.parameters, "source", "exact_sd"));
  HausdorffReport rep = dh_approx(distance_field(g, *s.a, source), distance_field(g, *s.b, source));
  const double gap = cli::param(ctx.config.parameters, "oracle_gap", 0.0);
  if (gap > 0.0) rep.oracle = dh_oracle(*s.a, *s.b, gap, ctx.threads);
  return rep;
}

int cmd_compute(const Context& ctx) {
  const auto s = require_scene(ctx, true);
  const Grid g = require_grid(ctx, s);
  const auto rep = compute_report(ctx, s, g);
  json j = cli::report_to_json(rep, g);
  j["seed"] = ctx.seed;
  write_output(ctx.out, dump(j));
  return 0;
}

int cmd_bounds(const Context& ctx) {
  const auto s = require_scene(ctx, true);
  const Grid g = require_grid(ctx, s);
  HausdorffReport rep = compute_report(ctx, s, g);
  const json& p = ctx.config.parameters;
  json all = json::array();
  const auto consider = [&](BoundKind kind, double value) {
    all.push_back({{"kind", to_string(kind)}, {"value", value}});
    if (!rep.upper_bound || value < *rep.upper_bound) {
      rep.upper_bound = value;
      rep.bound_kind = kind;
    }
  };
  consider(BoundKind::WorstCase, worst_case_bound(rep, g));
  const double sgap = cli::param(p, "suitability_gap", g.spacing() / 8.0);
  const bool suit_a = check_suitable(g, *s.a, sgap);
  const bool suit_b = check_suitable(g, *s.b, sgap);
  if (auto b = suitable_bound(rep, g, suit_a && suit_b)) consider(BoundKind::Suitable, *b);
  json cert_json;
  if (p.contains("external")) {
    const json& e = p.at("external");
    cli::require_keys(e, {"x", "y", "r", "gap"}, "parameters.external");
    Vec vx{0, 0, 0}, vy{0, 0, 0};
    const auto xs = cli::param(e, "x", std::vector<double>{});
    const auto ys = cli::param(e, "y", std::vector<double>{});
    if (static_cast<int>(xs.size()) != g.dim() || static_cast<int>(ys.size()) != g.dim())
      throw ConfigError("parameters.external: x and y need dim entries");
    for (int k = 0; k < g.dim(); ++k) {
      vx[k] = xs[k];
      vy[k] = ys[k];
    }
    const auto cert = certify_external(*s.a, *s.b, vx, vy, cli::param(e, "r", 0.0),
                                       cli::param(e, "gap", g.spacing() / 4.0));
    cert_json = {{"admissible", cert.admissible}, {"slack", cert.slack}, {"tolerance", cert.tolerance}};
    if (cert.admissible) consider(BoundKind::External, external_bound(rep, cert, g));
  }
  json j = cli::report_to_json(rep, g);
  j["all_bounds"] = all;
  j["suitable"] = {{"a", suit_a}, {"b", suit_b}};
  if (!cert_json.is_null()) j["external"] = cert_json;
  const int m = cli::param(p, "samples", 0);
  if (m > 0) {
    const FieldSource source = parse_field_source(cli::param<std::string>(p, "source", "exact_sd"));
    j["sampled_cell_bound"] = {
        {"value", general_upper_bound_sampled(distance_field(g, *s.a, source), distance_field(g, *s.b, source), m)},
        {"samples_per_axis", m},
        {"certified", false}};
  }
  j["seed"] = ctx.seed;
  write_output(ctx.out, dump(j));
  return 0;
}

Vec vec_param(const json& p, const char* key, int dim) {
  const auto v = cli::param(p, key, std::vector<double>{});
  if (static_cast<int>(v.size()) != dim) throw ConfigError(std::string("parameter '") + key + "' needs dim entries");
  Vec out{0, 0, 0};
  for (int k = 0; k < dim; ++k) out[k] = v[k];
  return out;
}

int cmd_certify(const Context& ctx) {
  const auto s = require_scene(ctx, true);
  const json& p = ctx.config.parameters;
  const int dim = s.a->dim();
  Vec x, y;
  double r = 0.0;
  if (s.ring && !p.contains("x")) {
    if (!s.ring->max_r) throw Error("witness lies in the interior of A: no external ball is admissible");
    x = s.ring->witness_x;
    y = s.ring->witness_y;
    r = cli::param(p, "r", *s.ring->max_r);
  } else {
    x = vec_param(p, "x", dim);
    y = vec_param(p, "y", dim);
    r = cli::param(p, "r", 0.0);
  }
  const double gap = cli::param(p, "gap", 0.05);
  const auto cert = certify_external(*s.a, *s.b, x, y, r, gap);
  json j = {{"x", cli::vec_to_json(cert.x, dim)},
            {"y", cli::vec_to_json(cert.y, dim)},
            {"direction", cli::vec_to_json(cert.direction, dim)},
            {"r", cert.r},
            {"c", cli::vec_to_json(cert.c, dim)},
            {"R", cert.R},
            {"admissible", cert.admissible},
            {"slack", cert.slack},
            {"tolerance", cert.tolerance}};
  if (!ctx.config.grid.is_null()) {
    const Grid g = require_grid(ctx, s);
    const auto rep = compute_report(ctx, s, g);
    j["d_tilde"] = rep.d_tilde;
    if (cert.admissible && g.spacing() < cert.r / std::sqrt(static_cast<double>(dim)))
      j["bounds"] = {{"kind", "external"}, {"value", external_bound(rep, cert, g)}};
  }
  write_output(ctx.out, dump(j));
  return cert.admissible ? 0 : 1;
}

int cmd_redistance(const Context& ctx) {
  const auto s = require_scene(ctx, false);
  const Grid g = require_grid(ctx, s);
  const ScalarField sd = fast_march(sample_level_set(g, *s.a));
  if (s.a->exact_sd()) {
    const ScalarField exact = sample_exact_sd(g, *s.a);
    double err = 0.0;
    for (std::size_t i = 0; i < sd.size(); ++i) err = std::max(err, std::abs(sd[i] - exact[i]));
    std::cerr << "max node error against exact signed distance: " << format_double(err) << '\n';
  }
  std::ostringstream os;
  if (ctx.format == "binary")
    write_field_binary(os, sd);
  else
    write_field_csv(os, sd);
  write_output(ctx.out, os.str());
  return 0;
}

int cmd_constants(const Context& ctx, int starts) {
  json rows = json::array();
  std::ostringstream os;
  os << "dim,value,closed_form,abs_diff\n";
  for (int dim = 1; dim <= 3; ++dim) {
    const auto c = compute_delta(dim, starts, ctx.seed);
    const double closed = delta_closed_form(dim);
    const double diff = std::abs(c.value - closed);
    os << dim << ',' << format_double(c.value) << ',' << format_double(closed) << ',' << format_double(diff) << '\n';
    rows.push_back({{"dim", dim},
                    {"value", c.value},
                    {"closed_form", closed},
                    {"abs_diff", diff},
                    {"maximizer", cli::vec_to_json(c.maximizer, dim)}});
  }
  write_output(ctx.out, ctx.format == "json" ? dump(json{{"seed", ctx.seed}, {"starts", starts}, {"constants", rows}})
                                             : os.str());
  return 0;
}

std::string render_records(const Context& ctx, const std::vector<RunRecord>& records, json extra) {
  std::ostringstream os;
  if (ctx.format == "json") {
    json rows = json::array();
    for (const auto& r : records)
      rows.push_back({{"run_id", r.run_id},
                      {"seed", r.seed},
                      {"dim", r.dim},
                      {"h", r.h},
                      {"displacement", cli::vec_to_json(r.displacement, 3)},
                      {"d_exact", r.d_exact},
                      {"d_tilde", r.d_tilde},
                      {"delta", r.delta},
                      {"bound", r.bound},
                      {"source", to_string(r.source)}});
    extra["records"] = rows;
    return dump(extra);
  }
  if (ctx.format == "gnuplot")
    write_records_gnuplot(os, records);
  else
    write_records_csv(os, records);
  return os.str();
}

std::vector<double> default_spacings(int dim) {
  return dim == 2 ? geometric_spacings(0.2, 0.025, 5) : geometric_spacings(0.4, 0.1, 5);
}

Vec to_vec(const std::vector<double>& v, int dim, const char* what) {
  if (static_cast<int>(v.size()) != dim) throw ConfigError(std::string(what) + " needs dim entries");
  Vec out{0, 0, 0};
  for (int k = 0; k < dim; ++k) out[k] = v[k];
  return out;
}

RingParams ring_params(const Context& ctx) {
  RingParams p;
  p.outer = cli::param(ctx.config.parameters, "outer", p.outer);
  p.width = cli::param(ctx.config.parameters, "width", p.width);
  p.inner = cli::param(ctx.config.parameters, "inner", p.inner);
  return p;
}

json fit_json(const OrderFit& f) { return {{"slope", f.slope}, {"intercept", f.intercept}, {"dropped", f.dropped}}; }

struct SweepFlags {
  int dim = 2;
  std::vector<double> displacement;
  std::vector<double> spacings;
  double h = 0.1;
  double max_disp = 5.0;
  int steps = 51;
  std::vector<double> direction;
  std::string source = "exact_sd";
  int runs = 200;
  double magnitude = 3.0;
  bool full_scale = false;
  std::string histogram;
};

int cmd_sweep_h(const Context& ctx, const SweepFlags& f) {
  const int dim = ctx.pick("--dim", "dim", f.dim, 2);
  const Vec disp = to_vec(ctx.pick("--displacement", "displacement", f.displacement, std::vector<double>(dim, 0.0)),
                          dim, "displacement");
  const auto hs = ctx.pick("--spacings", "h", f.spacings, default_spacings(dim));
  const auto source = parse_field_source(ctx.pick("--source", "source", f.source, std::string("exact_sd")));
  const auto res = sweep_h(dim, disp, hs, source, ring_params(ctx), ctx.threads);
  std::cerr << "fitted order: " << format_double(res.fit.slope) << " (dropped " << res.fit.dropped << ")\n";
  write_output(ctx.out, render_records(ctx, res.records, {{"fit", fit_json(res.fit)}}));
  return 0;
}

int cmd_sweep_displacement(const Context& ctx, const SweepFlags& f) {
  const int dim = ctx.pick("--dim", "dim", f.dim, 2);
  const double h = ctx.pick("--spacing", "h", f.h, 0.1);
  const double max_disp = ctx.pick("--max-disp", "max_disp", f.max_disp, 5.0);
  const int steps = ctx.pick("--steps", "steps", f.steps, 51);
  std::vector<double> unit(dim, 0.0);
  unit[0] = 1.0;
  Vec dir = to_vec(ctx.pick("--direction", "direction", f.direction, unit), dim, "direction");
  if (!(norm(dir) > 0.0)) throw ConfigError("direction must be non-zero");
  dir = (1.0 / norm(dir)) * dir;
  if (steps < 2) throw ConfigError("steps must be at least 2");
  std::vector<Vec> disps;
  for (int i = 0; i < steps; ++i) disps.push_back((max_disp * i / (steps - 1)) * dir);
  const auto source = parse_field_source(ctx.pick("--source", "source", f.source, std::string("exact_sd")));
  write_output(ctx.out, render_records(ctx, sweep_displacement(dim, h, disps, source, ring_params(ctx), ctx.threads),
                                       json::object()));
  return 0;
}

int cmd_randomized(const Context& ctx, const SweepFlags& f) {
  const int dim = ctx.pick("--dim", "dim", f.dim, 2);
  const bool full_scale = ctx.pick("--full-scale", "full_scale", f.full_scale, false);
  const int runs = ctx.pick("--runs", "runs", f.runs, full_scale ? 1000 : 200);
  const auto hs = ctx.pick("--spacings", "h", f.spacings, default_spacings(dim));
  EnsembleOptions opt;
  opt.displacement = ctx.pick("--magnitude", "magnitude", f.magnitude, opt.displacement);
  opt.source = parse_field_source(ctx.pick("--source", "source", f.source, std::string("exact_sd")));
  opt.params = ring_params(ctx);
  const auto res = randomized_ensemble(dim, runs, hs, ctx.seed, opt, ctx.threads);
  std::cerr << "runs: " << runs << ", median order: " << format_double(res.median_slope)
            << ", fraction above 2: " << format_double(res.fraction_above_two) << ", failed fits: " << res.failed_fits
            << '\n';
  json summary = {{"seed", ctx.seed},
                  {"runs", runs},
                  {"median_slope", res.median_slope},
                  {"fraction_above_two", res.fraction_above_two},
                  {"failed_fits", res.failed_fits},
                  {"geometric_mean", res.geometric_mean}};
  write_output(ctx.out, render_records(ctx, res.records, summary));
  const std::string hist = !f.histogram.empty() ? f.histogram : ctx.config.output.value("histogram", std::string());
  if (!hist.empty()) {
    std::ostringstream os;
    write_histogram_csv(os, res.slope_histogram);
    write_output(hist, os.str());
  }
  return 0;
}

struct SequenceFlags {
  double x0 = 0.5;
  double k = 0.6180339887498949;
  std::int64_t N = 10;
  std::int64_t count = 10000;
  int bins = 20;
  std::string histogram;
};

int cmd_sequence(const Context& ctx, const SequenceFlags& f) {
  const double x0 = ctx.pick("--x0", "x0", f.x0, 0.5);
  const double k = ctx.pick("--k", "k", f.k, 0.6180339887498949);
  const auto N = ctx.pick("--N", "N", f.N, std::int64_t{10});
  const auto a = analyze_iterates(x0, k, N);
  json j = {{"x0", x0},
            {"k", k},
            {"N", a.N},
            {"rational", a.rational},
            {"epsilon", static_cast<double>(a.epsilon)},
            {"i0", a.i0},
            {"j0", a.j0}};
  if (!a.rational) {
    j["found"] = a.found;
    j["m"] = a.m;
    j["K_bound"] = a.K_bound;
    j["bound_2_over_eps2"] = static_cast<double>(2.0L / (a.epsilon * a.epsilon));
  }
  const auto count = ctx.pick("--count", "count", f.count, std::int64_t{10000});
  const int bins = ctx.pick("--bins", "bins", f.bins, 20);
  const auto u = uniformity_histogram(x0, k, count, bins);
  j["uniformity"] = {{"count", count},
                     {"bins", bins},
                     {"chi_square", u.chi_square},
                     {"max_relative_deviation", u.max_relative_deviation},
                     {"note", "descriptive statistic only"}};
  write_output(ctx.out, dump(j));
  const std::string hist = !f.histogram.empty() ? f.histogram : ctx.config.output.value("histogram", std::string());
  if (!hist.empty()) {
    std::ostringstream os;
    write_histogram_csv(os, u.histogram);
    write_output(hist, os.str());
  }
  return 0;
}

struct McFlags {
  int n = 2;
  std::int64_t N = 100;
  std::int64_t trials = 10000;
};

int cmd_mc(const Context& ctx, const McFlags& f) {
  const int n = ctx.pick("--n", "n", f.n, 2);
  const auto N = ctx.pick("--N", "N", f.N, std::int64_t{100});
  const auto trials = ctx.pick("--trials", "trials", f.trials, std::int64_t{10000});
  const auto mc = simulate_min_distance(n, N, trials, ctx.seed, ctx.threads);
  const double expected = expected_min_distance(n, N);
  if (ctx.format == "json") {
    write_output(ctx.out, dump({{"model", "heuristic sector model"},
                                {"n", n},
                                {"N", N},
                                {"trials", trials},
                                {"seed", ctx.seed},
                                {"mean", mc.mean},
                                {"stderr", mc.stderr_},
                                {"expected", expected}}));
  } else {
    std::ostringstream os;
    os << "n,N,trials,seed,mean,stderr,expected\n"
       << n << ',' << N << ',' << trials << ',' << ctx.seed << ',' << format_double(mc.mean) << ','
       << format_double(mc.stderr_) << ',' << format_double(expected) << '\n';
    write_output(ctx.out, os.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid approximation of Hausdorff distances between level-set shapes", "hausdorff-grid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  Common common;
  SweepFlags sweep;
  SequenceFlags seq;
  McFlags mc;
  int starts = 64;

  auto* compute = app.add_subcommand("compute", "Grid lower bound d_tilde for a scene (JSON report)");
  auto* bounds = app.add_subcommand("bounds", "d_tilde with worst-case, suitable-grid and external upper bounds");
  auto* certify = app.add_subcommand("certify", "Check the external empty-ball conditions for a witness pair");
  auto* redistance = app.add_subcommand("redistance", "Fast-marching signed distance of a shape's level set");
  auto* constants = app.add_subcommand("constants", "Dimensional constants Delta_1..Delta_3 (CSV)");
  auto* sweep_h_cmd = app.add_subcommand("sweep-h", "Circle-in-ring error against grid spacing, with order fit");
  auto* sweep_d_cmd = app.add_subcommand("sweep-displacement", "Circle-in-ring error against displacement");
  auto* randomized = app.add_subcommand("randomized", "Randomized circle-in-ring ensemble with per-run order fits");
  auto* sequence = app.add_subcommand("sequence-analysis", "Iterates frac(x0 + i k): closest pair and return index");
  auto* mcmin = app.add_subcommand("mc-mindist", "Monte Carlo check of the minimum-distance order statistic");
  for (auto* sub : {compute, bounds, certify, redistance, constants, sweep_h_cmd, sweep_d_cmd, randomized, sequence, mcmin})
    add_common(sub, common);

  constants->add_option("--starts", starts, "Multi-start count for the maximization")->check(CLI::PositiveNumber);

  for (auto* sub : {sweep_h_cmd, sweep_d_cmd, randomized}) {
    sub->add_option("--dim", sweep.dim, "Dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
    sub->add_option("--source", sweep.source, "Distance fields: exact_sd or fmm")
        ->check(CLI::IsMember({"exact_sd", "fmm"}));
  }
  sweep_h_cmd->add_option("--displacement", sweep.displacement, "Inner ball centre, comma separated")->delimiter(',');
  sweep_h_cmd->add_option("--spacings", sweep.spacings, "Decreasing grid spacings, comma separated")->delimiter(',');
  sweep_d_cmd->add_option("--spacing", sweep.h, "Grid spacing")->check(CLI::PositiveNumber);
  sweep_d_cmd->add_option("--max-disp", sweep.max_disp, "Largest displacement")->check(CLI::NonNegativeNumber);
  sweep_d_cmd->add_option("--steps", sweep.steps, "Number of displacements from 0 to --max-disp");
  sweep_d_cmd->add_option("--direction", sweep.direction, "Displacement direction, comma separated")->delimiter(',');
  randomized->add_option("--runs", sweep.runs, "Number of runs")->check(CLI::PositiveNumber);
  randomized->add_option("--spacings", sweep.spacings, "Decreasing grid spacings, comma separated")->delimiter(',');
  randomized->add_option("--magnitude", sweep.magnitude, "Distance of the inner ball from the origin");
  randomized->add_flag("--full-scale", sweep.full_scale, "Use 1000 runs unless --runs is given");
  randomized->add_option("--histogram", sweep.histogram, "Write the order histogram CSV here");

  sequence->add_option("--x0", seq.x0, "Start value x0");
  sequence->add_option("--k", seq.k, "Increment k");
  sequence->add_option("--N", seq.N, "Number of leading iterates for the closest pair")->check(CLI::PositiveNumber);
  sequence->add_option("--count", seq.count, "Iterates in the uniformity histogram")->check(CLI::PositiveNumber);
  sequence->add_option("--bins", seq.bins, "Histogram bins")->check(CLI::PositiveNumber);
  sequence->add_option("--histogram", seq.histogram, "Write the histogram CSV here");

  mcmin->add_option("--n", mc.n, "Dimension of the sector model (2 or 3)")->check(CLI::IsMember({2, 3}));
  mcmin->add_option("--N", mc.N, "Draws per trial")->check(CLI::PositiveNumber);
  mcmin->add_option("--trials", mc.trials, "Number of trials")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "compute")
      return cmd_compute(make_context(name, sub, common, {"source", "oracle_gap"}, "json", {"json"}));
    if (name == "bounds")
      return cmd_bounds(make_context(name, sub, common,
                                     {"source", "oracle_gap", "suitability_gap", "external", "samples"}, "json",
                                     {"json"}));
    if (name == "certify")
      return cmd_certify(make_context(name, sub, common, {"x", "y", "r", "gap", "source", "oracle_gap"}, "json",
                                      {"json"}));
    if (name == "redistance") return cmd_redistance(make_context(name, sub, common, {}, "csv", {"csv", "binary"}));
    if (name == "constants")
      return cmd_constants(make_context(name, sub, common, {}, "csv", {"csv", "json"}),
                           starts);
    const std::initializer_list<const char*> tabular{"csv", "json", "gnuplot"};
    if (name == "sweep-h")
      return cmd_sweep_h(make_context(name, sub, common,
                                      {"dim", "displacement", "h", "source", "outer", "width", "inner"}, "csv",
                                      tabular),
                         sweep);
    if (name == "sweep-displacement")
      return cmd_sweep_displacement(
          make_context(name, sub, common,
                       {"dim", "h", "max_disp", "steps", "direction", "source", "outer", "width", "inner"}, "csv",
                       tabular),
          sweep);
    if (name == "randomized")
      return cmd_randomized(make_context(name, sub, common,
                                         {"dim", "runs", "h", "magnitude", "source", "full_scale", "outer", "width",
                                          "inner"},
                                         "csv", tabular),
                            sweep);
    if (name == "sequence-analysis")
      return cmd_sequence(make_context(name, sub, common, {"x0", "k", "N", "count", "bins"}, "json", {"json"}), seq);
    if (name == "mc-mindist")
      return cmd_mc(make_context(name, sub, common, {"n", "N", "trials"}, "csv", {"csv", "json"}), mc);
    throw ConfigError("unknown subcommand '" + name + "'");
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "hdgrid/bounds.hpp"
#include "hdgrid/errors.hpp"
#include "hdgrid/experiments.hpp"
#include "hdgrid/field.hpp"
#include "hdgrid/grid.hpp"
#include "hdgrid/hausdorff.hpp"
#include "hdgrid/shapes.hpp"
#include "hdgrid/stochastic.hpp"

namespace py = pybind11;
using namespace hdgrid;

namespace {

// Python sequences of length 1 to 3 map to Vec, padded with zeros.
Vec to_vec(const std::vector<double>& v) {
  if (v.empty() || v.size() > 3) throw py::value_error("expected 1 to 3 coordinates");
  Vec out{0, 0, 0};
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k];
  return out;
}

py::tuple from_vec(const Vec& v, int dim) {
  py::tuple t(dim);
  for (int k = 0; k < dim; ++k) t[k] = v[k];
  return t;
}

Index to_index(const std::vector<std::int64_t>& v) {
  if (v.empty() || v.size() > 3) throw py::value_error("expected 1 to 3 counts");
  Index out{1, 1, 1};
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k];
  return out;
}

// Node values as an array indexed [i_{n-1}, ..., i_0]; the first axis varies slowest.
py::array_t<double> field_array(const ScalarField& f) {
  const Grid& g = f.grid();
  std::vector<py::ssize_t> shape;
  for (int k = g.dim() - 1; k >= 0; --k) shape.push_back(static_cast<py::ssize_t>(g.counts()[k]));
  py::array_t<double> out(shape);
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

ScalarField field_from_array(const Grid& g, py::array_t<double, py::array::c_style | py::array::forcecast> values) {
  if (static_cast<std::size_t>(values.size()) != g.node_count())
    throw py::value_error("array size does not match the grid node count");
  return ScalarField(g, std::vector<double>(values.data(), values.data() + values.size()));
}

py::dict oracle_dict(const OracleResult& o, int dim) {
  py::dict d;
  d["dh"] = o.dh;
  d["one_sided_ab"] = o.one_sided_ab;
  d["one_sided_ba"] = o.one_sided_ba;
  d["witness"] = py::make_tuple(from_vec(o.witness.first, dim), from_vec(o.witness.second, dim));
  d["error_bound"] = o.error_bound;
  return d;
}

py::dict record_dict(const RunRecord& r) {
  py::dict d;
  d["run_id"] = r.run_id;
  d["seed"] = r.seed;
  d["dim"] = r.dim;
  d["h"] = r.h;
  d["displacement"] = from_vec(r.displacement, r.dim);
  d["d_exact"] = r.d_exact;
  d["d_tilde"] = r.d_tilde;
  d["delta"] = r.delta;
  d["bound"] = r.bound;
  d["source"] = to_string(r.source);
  return d;
}

py::list records_list(const std::vector<RunRecord>& rs) {
  py::list out;
  for (const auto& r : rs) out.append(record_dict(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grid approximation of Hausdorff distances between level-set shapes";

  // Translators run newest first, so the derived type is registered last.
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<Grid>(m, "Grid")
      .def(py::init([](int dim, const std::vector<double>& origin, double h, const std::vector<std::int64_t>& counts) {
             return Grid(dim, to_vec(origin), h, to_index(counts));
           }),
           py::arg("dim"), py::arg("origin"), py::arg("h"), py::arg("counts"))
      .def_property_readonly("dim", &Grid::dim)
      .def_property_readonly("h", &Grid::spacing)
      .def_property_readonly("origin", [](const Grid& g) { return from_vec(g.origin(), g.dim()); })
      .def_property_readonly("counts",
                             [](const Grid& g) {
                               py::tuple t(g.dim());
                               for (int k = 0; k < g.dim(); ++k) t[k] = g.counts()[k];
                               return t;
                             })
      .def_property_readonly("node_count", &Grid::node_count)
      .def("node_position", [](const Grid& g, const std::vector<std::int64_t>& i) {
        Index idx{0, 0, 0};
        for (std::size_t k = 0; k < i.size() && k < 3; ++k) idx[k] = i[k];
        return from_vec(g.node_position(idx), g.dim());
      })
      .def("__repr__", [](const Grid& g) {
        std::ostringstream os;
        os << "Grid(dim=" << g.dim() << ", h=" << g.spacing() << ", nodes=" << g.node_count() << ")";
        return os.str();
      });

  py::class_<Shape>(m, "Shape")
      .def_static("ball", [](int dim, const std::vector<double>& c, double r) { return Shape::ball(dim, to_vec(c), r); },
                  py::arg("dim"), py::arg("center"), py::arg("radius"))
      .def_static("box",
                  [](int dim, const std::vector<double>& lo, const std::vector<double>& hi) {
                    return Shape::box(dim, to_vec(lo), to_vec(hi));
                  },
                  py::arg("dim"), py::arg("lo"), py::arg("hi"))
      .def_static("union", &Shape::unite, py::arg("children"), py::arg("exact") = false)
      .def_static("intersection", &Shape::intersect, py::arg("children"), py::arg("exact") = false)
      .def_static("complement", &Shape::complement, py::arg("child"))
      .def_static("difference", &Shape::difference, py::arg("a"), py::arg("b"), py::arg("exact") = false)
      .def_property_readonly("dim", &Shape::dim)
      .def_property_readonly("kind", [](const Shape& s) { return to_string(s.kind()); })
      .def_property_readonly("exact_sd", &Shape::exact_sd)
      .def_property_readonly("exact_distance", &Shape::exact_distance)
      .def("sd", [](const Shape& s, const std::vector<double>& x) { return s.evaluate_sd(to_vec(x)); })
      .def("contains", [](const Shape& s, const std::vector<double>& x) { return s.contains(to_vec(x)); });

  py::class_<ScalarField>(m, "ScalarField")
      .def(py::init(&field_from_array), py::arg("grid"), py::arg("values"))
      .def_property_readonly("grid", &ScalarField::grid)
      .def_property_readonly("values", &field_array)
      .def("__len__", &ScalarField::size);

  m.def("sample_exact_sd", &sample_exact_sd, py::arg("grid"), py::arg("shape"));
  m.def("sample_exact_distance", &sample_exact_distance, py::arg("grid"), py::arg("shape"));
  m.def("sample_level_set", &sample_level_set, py::arg("grid"), py::arg("shape"));
  m.def("fast_march", &fast_march, py::arg("phi"));
  m.def("positive_part", &positive_part, py::arg("sd"));
  m.def("negative_part", &negative_part, py::arg("sd"));

  m.def(
      "dh_approx",
      [](const ScalarField& a, const ScalarField& b) {
        const auto r = dh_approx(a, b);
        const Grid& g = a.grid();
        py::dict d;
        d["d_tilde"] = r.d_tilde;
        py::tuple idx(g.dim());
        for (int k = 0; k < g.dim(); ++k) idx[k] = r.argmax[k];
        d["argmax"] = idx;
        d["position"] = from_vec(g.node_position(r.argmax), g.dim());
        d["tie_count"] = r.tie_count;
        d["worst_case_bound"] = worst_case_bound(r, g);
        return d;
      },
      py::arg("dA"), py::arg("dB"));
  m.def(
      "dh_oracle", [](const Shape& a, const Shape& b, double gap, int threads) {
        return oracle_dict(dh_oracle(a, b, gap, threads), a.dim());
      },
      py::arg("a"), py::arg("b"), py::arg("gap"), py::arg("threads") = 1);
  m.def(
      "sd_supnorm", [](const ScalarField& a, const ScalarField& b) { return sd_supnorm(a, b).value; }, py::arg("sdA"),
      py::arg("sdB"));

  m.def("delta_closed_form", &delta_closed_form, py::arg("dim"));
  m.def(
      "compute_delta",
      [](int dim, int starts, std::uint64_t seed) {
        const auto d = compute_delta(dim, starts, seed);
        return py::make_tuple(d.value, from_vec(d.maximizer, dim));
      },
      py::arg("dim"), py::arg("starts") = 64, py::arg("seed") = 0x5eed);
  m.def("check_suitable", &check_suitable, py::arg("grid"), py::arg("shape"), py::arg("gap"));
  m.def("external_bound_term", &external_bound_term, py::arg("dim"), py::arg("h"), py::arg("r"));
  m.def(
      "certify_external",
      [](const Shape& a, const Shape& b, const std::vector<double>& x, const std::vector<double>& y, double r,
         double gap) {
        const auto c = certify_external(a, b, to_vec(x), to_vec(y), r, gap);
        py::dict d;
        d["admissible"] = c.admissible;
        d["slack"] = c.slack;
        d["tolerance"] = c.tolerance;
        d["R"] = c.R;
        d["center"] = from_vec(c.c, a.dim());
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("x"), py::arg("y"), py::arg("r"), py::arg("gap"));
  m.def(
      "maximal_error_scene",
      [](double h, double rho) {
        auto s = build_maximal_error_scene(h, rho);
        py::dict d;
        d["grid"] = s.grid;
        d["dA"] = s.dA;
        d["dB"] = s.dB;
        d["a"] = s.a;
        d["b"] = s.b;
        d["r"] = s.r;
        d["rho"] = s.rho;
        d["expected_d_tilde"] = s.expected_d_tilde;
        d["expected_dh"] = s.expected_dh;
        return d;
      },
      py::arg("h"), py::arg("rho"));

  m.def(
      "circle_in_ring",
      [](int dim, const std::vector<double>& displacement) {
        auto s = scene_circle_in_ring(dim, to_vec(displacement));
        py::dict d;
        d["a"] = s.a;
        d["b"] = s.b;
        d["dh"] = s.dh;
        d["witness_x"] = from_vec(s.witness_x, dim);
        d["witness_y"] = from_vec(s.witness_y, dim);
        d["max_r"] = s.max_r ? py::object(py::float_(*s.max_r)) : py::object(py::none());
        return d;
      },
      py::arg("dim"), py::arg("displacement"));
  m.def(
      "sweep_h",
      [](int dim, const std::vector<double>& displacement, const std::vector<double>& hs, const std::string& source,
         int threads) {
        const auto r = sweep_h(dim, to_vec(displacement), hs, parse_field_source(source), {}, threads);
        return py::make_tuple(records_list(r.records), r.fit.slope);
      },
      py::arg("dim"), py::arg("displacement"), py::arg("h_list"), py::arg("source") = "exact_sd",
      py::arg("threads") = 1);
  m.def(
      "randomized_ensemble",
      [](int dim, int runs, const std::vector<double>& hs, std::uint64_t seed, int threads) {
        const auto e = randomized_ensemble(dim, runs, hs, seed, {}, threads);
        py::dict d;
        d["records"] = records_list(e.records);
        py::list slopes;
        for (const auto& f : e.fits) slopes.append(f ? py::object(py::float_(f->slope)) : py::object(py::none()));
        d["slopes"] = slopes;
        d["median_slope"] = e.median_slope;
        d["fraction_above_two"] = e.fraction_above_two;
        d["geometric_mean"] = e.geometric_mean;
        return d;
      },
      py::arg("dim"), py::arg("runs"), py::arg("h_list"), py::arg("seed"), py::arg("threads") = 1);
  m.def(
      "fit_order", [](const std::vector<std::pair<double, double>>& pts) { return fit_order(pts).slope; },
      py::arg("points"));
  m.def("geometric_spacings", &geometric_spacings, py::arg("first"), py::arg("last"), py::arg("count"));

  m.def(
      "analyze_iterates",
      [](double x0, double k, std::int64_t N) {
        const auto a = analyze_iterates(x0, k, N);
        py::dict d;
        d["rational"] = a.rational;
        d["epsilon"] = static_cast<double>(a.epsilon);
        d["i0"] = a.i0;
        d["j0"] = a.j0;
        d["found"] = a.found;
        d["m"] = a.m;
        d["K_bound"] = a.K_bound;
        return d;
      },
      py::arg("x0"), py::arg("k"), py::arg("N"));
  m.def("expected_min_distance", &expected_min_distance, py::arg("n"), py::arg("N"));
  m.def(
      "simulate_min_distance",
      [](int n, std::int64_t N, std::int64_t trials, std::uint64_t seed, int threads) {
        const auto e = simulate_min_distance(n, N, trials, seed, threads);
        return py::make_tuple(e.mean, e.stderr_);
      },
      py::arg("n"), py::arg("N"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 1);
  m.def(
      "probe_segment",
      [](const Grid& g, const std::vector<double>& p, const std::vector<double>& q) {
        const auto r = probe_segment(g, Segment{to_vec(p), to_vec(q)});
        return py::make_tuple(r.beta, r.edges_crossed);
      },
      py::arg("grid"), py::arg("p"), py::arg("q"));
  m.def("beta_error_bound", &beta_error_bound, py::arg("beta"), py::arg("r"));
}

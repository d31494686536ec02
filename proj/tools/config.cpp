#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "hdgrid/errors.hpp"

namespace hdgrid::cli {

void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError("missing key '" + std::string(key) + "' in " + where);
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  return j.get<double>();
}

// Returns the vector and its length (the dimension it implies).
std::pair<Vec, int> vector3(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || j.size() > static_cast<std::size_t>(kMaxDim))
    throw ConfigError(where + " must be an array of 1 to 3 numbers");
  Vec v{0, 0, 0};
  for (std::size_t k = 0; k < j.size(); ++k) v[k] = number(j[k], where);
  return {v, static_cast<int>(j.size())};
}

bool flag(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return false;
  if (!j.at(key).is_boolean()) throw ConfigError(std::string(key) + " in " + where + " must be a boolean");
  return j.at(key).get<bool>();
}

Shape parse_shape_at(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  const std::string type = field(j, "type", where).get<std::string>();
  try {
    if (type == "ball") {
      require_keys(j, {"type", "center", "radius"}, where);
      const auto [c, dim] = vector3(field(j, "center", where), where + ".center");
      return Shape::ball(dim, c, number(field(j, "radius", where), where + ".radius"));
    }
    if (type == "box") {
      require_keys(j, {"type", "min", "max"}, where);
      const auto [lo, d1] = vector3(field(j, "min", where), where + ".min");
      const auto [hi, d2] = vector3(field(j, "max", where), where + ".max");
      if (d1 != d2) throw ConfigError(where + ": min and max differ in dimension");
      return Shape::box(d1, lo, hi);
    }
    if (type == "union" || type == "intersection") {
      require_keys(j, {"type", "children", "exact"}, where);
      const json& kids = field(j, "children", where);
      if (!kids.is_array() || kids.empty()) throw ConfigError(where + ".children must be a non-empty array");
      std::vector<Shape> children;
      for (std::size_t i = 0; i < kids.size(); ++i)
        children.push_back(parse_shape_at(kids[i], where + ".children[" + std::to_string(i) + "]"));
      const bool exact = flag(j, "exact", where);
      return type == "union" ? Shape::unite(std::move(children), exact) : Shape::intersect(std::move(children), exact);
    }
    if (type == "complement") {
      require_keys(j, {"type", "child"}, where);
      return Shape::complement(parse_shape_at(field(j, "child", where), where + ".child"));
    }
    if (type == "difference") {
      require_keys(j, {"type", "a", "b", "exact"}, where);
      return Shape::difference(parse_shape_at(field(j, "a", where), where + ".a"),
                               parse_shape_at(field(j, "b", where), where + ".b"), flag(j, "exact", where));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError("unknown shape type '" + type + "' in " + where);
}

}  // namespace

Shape parse_shape(const json& j) { return parse_shape_at(j, "shape"); }

Scene parse_scene(const json& j) {
  if (!j.is_object()) throw ConfigError("scene must be a JSON object");
  Scene s;
  if (!j.contains("preset")) {
    require_keys(j, {"a", "b"}, "scene");
    s.a = parse_shape_at(field(j, "a", "scene"), "scene.a");
    if (j.contains("b")) {
      s.b = parse_shape_at(j.at("b"), "scene.b");
      if (s.b->dim() != s.a->dim()) throw ConfigError("scene: a and b differ in dimension");
    }
    return s;
  }
  const std::string preset = j.at("preset").get<std::string>();
  if (preset == "intervals") {
    require_keys(j, {"preset"}, "scene");
    s.a = Shape::box(1, {0, 0, 0}, {1, 0, 0});
    s.b = Shape::box(1, {0, 0, 0}, {3, 0, 0});
  } else if (preset == "ring_ball") {
    require_keys(j, {"preset", "dim", "R", "r"}, "scene");
    const int dim = param(j, "dim", 2);
    const double big = param(j, "R", 2.0), small = param(j, "r", 1.0);
    if (!(small > 0.0 && small < big)) throw ConfigError("ring_ball needs 0 < r < R");
    if (dim < 1 || dim > 3) throw ConfigError("ring_ball: dim must be 1, 2 or 3");
    s.a = Shape::ball(dim, {0, 0, 0}, big);
    s.b = Shape::difference(*s.a, Shape::ball(dim, {0, 0, 0}, small), true);
  } else if (preset == "identical") {
    require_keys(j, {"preset", "shape"}, "scene");
    s.a = parse_shape_at(field(j, "shape", "scene"), "scene.shape");
    s.b = s.a;
  } else if (preset == "circle_in_ring") {
    require_keys(j, {"preset", "dim", "displacement", "outer", "width", "inner"}, "scene");
    const int dim = param(j, "dim", 2);
    RingParams p;
    p.outer = param(j, "outer", p.outer);
    p.width = param(j, "width", p.width);
    p.inner = param(j, "inner", p.inner);
    Vec disp{0, 0, 0};
    if (j.contains("displacement")) {
      const auto [v, d] = vector3(j.at("displacement"), "scene.displacement");
      if (d != dim) throw ConfigError("scene.displacement must have dim entries");
      disp = v;
    }
    try {
      s.ring = scene_circle_in_ring(dim, disp, p);
    } catch (const Error& e) {
      throw ConfigError(std::string("scene: ") + e.what());
    }
    s.a = s.ring->a;
    s.b = s.ring->b;
  } else {
    throw ConfigError("unknown scene preset '" + preset + "'");
  }
  return s;
}

Grid parse_grid(const json& j, const Scene& scene) {
  if (!j.is_object()) throw ConfigError("grid must be a JSON object");
  try {
    if (j.contains("counts")) {
      require_keys(j, {"dim", "origin", "h", "counts"}, "grid");
      const int dim = field(j, "dim", "grid").get<int>();
      const auto [origin, d1] = vector3(field(j, "origin", "grid"), "grid.origin");
      const json& cj = field(j, "counts", "grid");
      if (!cj.is_array() || static_cast<int>(cj.size()) != dim || d1 != dim)
        throw ConfigError("grid: origin and counts must have dim entries");
      Index counts{1, 1, 1};
      for (int k = 0; k < dim; ++k) counts[k] = cj[k].get<std::int64_t>();
      Grid g(dim, origin, number(field(j, "h", "grid"), "grid.h"), counts);
      if (scene.a && scene.a->dim() != dim) throw ConfigError("grid and scene dimensions differ");
      return g;
    }
    const double h = number(field(j, "h", "grid"), "grid.h");
    if (scene.ring) {
      require_keys(j, {"h", "offset"}, "grid");
      Vec offset{0, 0, 0};
      if (j.contains("offset")) offset = vector3(j.at("offset"), "grid.offset").first;
      return ring_grid(scene.ring->dim, h, offset, scene.ring->params);
    }
    require_keys(j, {"h", "margin"}, "grid");
    if (!(h > 0.0)) throw ConfigError("grid.h must be positive");
    const double margin = param(j, "margin", 2.0 * h);
    if (!scene.a) throw ConfigError("grid: automatic extent needs a scene");
    const int dim = scene.a->dim();
    auto box = scene.a->bounds();
    if (scene.b) {
      const auto other = scene.b->bounds();
      if (box && other)
        for (int k = 0; k < dim; ++k) {
          box->lo[k] = std::min(box->lo[k], other->lo[k]);
          box->hi[k] = std::max(box->hi[k], other->hi[k]);
        }
      else
        box.reset();
    }
    if (!box || box->empty(dim)) throw ConfigError("grid: automatic extent needs bounded, non-empty sets");
    Vec origin{0, 0, 0};
    Index counts{1, 1, 1};
    for (int k = 0; k < dim; ++k) {
      origin[k] = box->lo[k] - margin;
      counts[k] = static_cast<std::int64_t>(std::ceil((box->hi[k] + margin - origin[k]) / h - 1e-9)) + 1;
    }
    return Grid(dim, origin, h, counts);
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

RunConfig parse_config(const json& j) {
  require_keys(j, {"scene", "grid", "operation", "parameters", "seed", "output"}, "config");
  RunConfig c;
  try {
    if (j.contains("scene")) c.scene = j.at("scene");
    if (j.contains("grid")) c.grid = j.at("grid");
    if (j.contains("operation")) c.operation = j.at("operation").get<std::string>();
    if (j.contains("parameters")) {
      c.parameters = j.at("parameters");
      if (!c.parameters.is_object()) throw ConfigError("parameters must be a JSON object");
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output")) {
      c.output = j.at("output");
      require_keys(c.output, {"data", "histogram"}, "output");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

json vec_to_json(const Vec& v, int dim) {
  json out = json::array();
  for (int k = 0; k < dim; ++k) out.push_back(v[k]);
  return out;
}

json report_to_json(const HausdorffReport& report, const Grid& g) {
  const int dim = g.dim();
  json out;
  out["d_tilde"] = report.d_tilde;
  json idx = json::array();
  for (int k = 0; k < dim; ++k) idx.push_back(report.argmax[k]);
  out["argmax"] = {{"index", idx}, {"position", vec_to_json(g.node_position(report.argmax), dim)}};
  out["tie_count"] = report.tie_count;
  if (report.upper_bound)
    out["bounds"] = {{"kind", to_string(report.bound_kind)}, {"value", *report.upper_bound}};
  if (report.oracle) {
    const auto& o = *report.oracle;
    out["oracle"] = {{"dh", o.dh},
                     {"ab", o.one_sided_ab},
                     {"ba", o.one_sided_ba},
                     {"witness", {vec_to_json(o.witness.first, dim), vec_to_json(o.witness.second, dim)}},
                     {"error_bound", o.error_bound}};
  }
  return out;
}

}  // namespace hdgrid::cli

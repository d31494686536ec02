#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>

#include <json.hpp>

#include "hdgrid/errors.hpp"
#include "hdgrid/experiments.hpp"
#include "hdgrid/grid.hpp"
#include "hdgrid/hausdorff.hpp"
#include "hdgrid/shapes.hpp"

namespace hdgrid::cli {

using json = nlohmann::json;

// Throws ConfigError naming the first key of obj that is not in `allowed`.
void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where);

// {"type": "ball", "center": [...], "radius": r}
// {"type": "box", "min": [...], "max": [...]}
// {"type": "union" | "intersection", "children": [...], "exact": bool}
// {"type": "complement", "child": {...}}
// {"type": "difference", "a": {...}, "b": {...}, "exact": bool}
Shape parse_shape(const json& j);

struct Scene {
  std::optional<Shape> a;
  std::optional<Shape> b;  // absent when only one set is needed
  std::optional<CircleInRingScene> ring;
};

// Either {"a": shape, "b": shape} or {"preset": name, ...} with presets
//   intervals       A = [0, 1], B = [0, 3]
//   ring_ball       A = closed ball R, B = A minus the ball r   ("R", "r", "dim")
//   identical       A = B = "shape"
//   circle_in_ring  ("dim", "displacement", "outer", "width", "inner")
Scene parse_scene(const json& j);

// Explicit {"dim", "origin", "h", "counts"}, or {"h", "margin"} for a grid
// covering both sets with the given margin (default 2h), or for the
// circle_in_ring preset {"h", "offset"}.
Grid parse_grid(const json& j, const Scene& scene);

struct RunConfig {
  json scene;
  json grid;
  std::string operation;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  json output = json::object();
};

RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);

json vec_to_json(const Vec& v, int dim);
json report_to_json(const HausdorffReport& report, const Grid& g);

// Typed lookup in a parameters object with a default.
template <typename T>
T param(const json& params, const char* key, const T& fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("parameter '") + key + "': " + e.what());
  }
}

}  // namespace hdgrid::cli

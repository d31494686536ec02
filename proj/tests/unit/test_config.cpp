#include <gtest/gtest.h>

#include "config.hpp"
#include "hdgrid/errors.hpp"

using namespace hdgrid;
using cli::json;

TEST(Config, RejectsUnknownKeys) {
  EXPECT_THROW(cli::parse_config(json::parse(R"({"scene": {}, "colour": 1})")), ConfigError);
  EXPECT_THROW(cli::parse_shape(json::parse(R"({"type": "ball", "center": [0, 0], "radius": 1, "r": 2})")),
               ConfigError);
  EXPECT_THROW(cli::parse_config(json::parse(R"({"output": {"data": "x", "plots": "y"}})")), ConfigError);
}

TEST(Config, ParsesNestedShapes) {
  const Shape s = cli::parse_shape(json::parse(R"({
    "type": "difference",
    "a": {"type": "union", "exact": true, "children": [
      {"type": "ball", "center": [0, 0], "radius": 1},
      {"type": "box", "min": [2, 2], "max": [3, 3]}]},
    "b": {"type": "complement", "child": {"type": "ball", "center": [0, 0], "radius": 4}}})"));
  EXPECT_EQ(s.dim(), 2);
  EXPECT_EQ(s.kind(), ShapeKind::Difference);
  EXPECT_TRUE(s.children().front().exact_sd());
  EXPECT_TRUE(s.contains({0, 0, 0}));
  EXPECT_FALSE(s.contains({1.5, 0, 0}));
}

TEST(Config, ShapeErrors) {
  EXPECT_THROW(cli::parse_shape(json::parse(R"({"type": "torus"})")), ConfigError);
  EXPECT_THROW(cli::parse_shape(json::parse(R"({"type": "ball", "center": [0, 0]})")), ConfigError);
  EXPECT_THROW(cli::parse_shape(json::parse(R"({"type": "ball", "center": [0, 0], "radius": -1})")), ConfigError);
  EXPECT_THROW(cli::parse_shape(json::parse(R"({"type": "box", "min": [0], "max": [1, 1]})")), ConfigError);
}

TEST(Config, PresetsAndAutomaticGrid) {
  const auto s = cli::parse_scene(json::parse(R"({"preset": "intervals"})"));
  const Grid g = cli::parse_grid(json::parse(R"({"h": 0.5, "margin": 1})"), s);
  EXPECT_EQ(g.dim(), 1);
  EXPECT_DOUBLE_EQ(g.origin()[0], -1.0);
  EXPECT_GE(g.upper()[0], 4.0);
  const auto ring = cli::parse_scene(json::parse(R"({"preset": "circle_in_ring", "dim": 2, "displacement": [3, 0]})"));
  ASSERT_TRUE(ring.ring.has_value());
  const Grid rg = cli::parse_grid(json::parse(R"({"h": 0.2})"), ring);
  EXPECT_TRUE(rg.covers(*ring.a));
  EXPECT_THROW(cli::parse_scene(json::parse(R"({"preset": "circle_in_ring", "displacement": [3, 0, 0]})")),
               ConfigError);
  EXPECT_THROW(cli::parse_scene(json::parse(R"({"preset": "nope"})")), ConfigError);
}

TEST(Config, ExplicitGridDimensionMismatch) {
  const auto s = cli::parse_scene(json::parse(R"({"preset": "intervals"})"));
  EXPECT_THROW(cli::parse_grid(json::parse(R"({"dim": 2, "origin": [0, 0], "h": 1, "counts": [3, 3]})"), s),
               ConfigError);
}

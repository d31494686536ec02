#include "point_index.hpp"

#include <iterator>
#include <limits>

namespace hdgrid::detail {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace {

std::vector<bg::model::point<double, 3, bg::cs::cartesian>> to_points(const std::vector<Vec>& pts) {
  std::vector<bg::model::point<double, 3, bg::cs::cartesian>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(p[0], p[1], p[2]);
  return out;
}

}  // namespace

PointIndex::PointIndex(const std::vector<Vec>& points) {
  const auto pts = to_points(points);
  tree_ = decltype(tree_)(pts.begin(), pts.end());  // packing constructor
}

double PointIndex::nearest(const Vec& q, Vec* where) const {
  std::vector<Point> hit;
  tree_.query(bgi::nearest(Point(q[0], q[1], q[2]), 1), std::back_inserter(hit));
  if (hit.empty()) return std::numeric_limits<double>::infinity();
  const Vec p{bg::get<0>(hit[0]), bg::get<1>(hit[0]), bg::get<2>(hit[0])};
  if (where) *where = p;
  return distance(p, q);
}

}  // namespace hdgrid::detail

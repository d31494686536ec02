#pragma once

#include <cstddef>
#include <vector>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "hdgrid/vec.hpp"

namespace hdgrid::detail {

// Static nearest-neighbour index over a point cloud.
class PointIndex {
 public:
  explicit PointIndex(const std::vector<Vec>& points);
  // Distance from q to the closest indexed point and that point.
  double nearest(const Vec& q, Vec* where = nullptr) const;
  bool empty() const { return tree_.empty(); }

 private:
  using Point = boost::geometry::model::point<double, 3, boost::geometry::cs::cartesian>;
  boost::geometry::index::rtree<Point, boost::geometry::index::rstar<16>> tree_;
};

}  // namespace hdgrid::detail

#include "depthbench/kdtree.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "depthbench/errors.h"

namespace depthbench {
namespace {

constexpr std::size_t kLeafSize = 8;

double coord(const Point3& p, int axis) {
  switch (axis) {
    case 0:
      return p.x;
    case 1:
      return p.y;
    default:
      return p.z;
  }
}

}  // namespace

KdTree::KdTree(std::span<const Point3> points)
    : points_(points.begin(), points.end()), ids_(points.size()), axis_(points.size(), 0) {
  if (points_.empty()) throw DegenerateInput("KdTree: cannot index an empty point cloud");
  std::iota(ids_.begin(), ids_.end(), std::uint32_t{0});
  build(0, points_.size());
}

void KdTree::build(std::size_t lo, std::size_t hi) {
  if (hi - lo <= kLeafSize) return;

  Point3 lower = points_[lo];
  Point3 upper = points_[lo];
  for (std::size_t i = lo + 1; i < hi; ++i) {
    const auto& p = points_[i];
    lower = {std::min(lower.x, p.x), std::min(lower.y, p.y), std::min(lower.z, p.z)};
    upper = {std::max(upper.x, p.x), std::max(upper.y, p.y), std::max(upper.z, p.z)};
  }
  const double ex = upper.x - lower.x;
  const double ey = upper.y - lower.y;
  const double ez = upper.z - lower.z;
  const int axis = (ex >= ey && ex >= ez) ? 0 : (ey >= ez ? 1 : 2);

  // Sort a permutation, then apply it to points and ids together.
  const std::size_t mid = lo + (hi - lo) / 2;
  std::vector<std::size_t> order(hi - lo);
  std::iota(order.begin(), order.end(), lo);
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(mid - lo), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return coord(points_[a], axis) < coord(points_[b], axis);
                   });
  std::vector<Point3> pts(hi - lo);
  std::vector<std::uint32_t> ids(hi - lo);
  for (std::size_t k = 0; k < order.size(); ++k) {
    pts[k] = points_[order[k]];
    ids[k] = ids_[order[k]];
  }
  std::copy(pts.begin(), pts.end(), points_.begin() + static_cast<std::ptrdiff_t>(lo));
  std::copy(ids.begin(), ids.end(), ids_.begin() + static_cast<std::ptrdiff_t>(lo));
  axis_[mid] = static_cast<std::uint8_t>(axis);

  build(lo, mid);
  build(mid + 1, hi);
}

KdTree::Neighbor KdTree::nearest(const Point3& query) const {
  Neighbor best{0, std::numeric_limits<double>::infinity()};
  search(query, 0, points_.size(), best);
  return best;
}

void KdTree::search(const Point3& q, std::size_t lo, std::size_t hi, Neighbor& best) const {
  if (hi - lo <= kLeafSize) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double d = squared_distance(q, points_[i]);
      if (d < best.squared_distance) best = {ids_[i], d};
    }
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const double d = squared_distance(q, points_[mid]);
  if (d < best.squared_distance) best = {ids_[mid], d};

  const int axis = axis_[mid];
  const double diff = coord(q, axis) - coord(points_[mid], axis);
  if (diff < 0.0) {
    search(q, lo, mid, best);
    if (diff * diff < best.squared_distance) search(q, mid + 1, hi, best);
  } else {
    search(q, mid + 1, hi, best);
    if (diff * diff < best.squared_distance) search(q, lo, mid, best);
  }
}

}  // namespace depthbench

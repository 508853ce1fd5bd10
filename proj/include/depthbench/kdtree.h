#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "depthbench/point_cloud.h"

namespace depthbench {

/// Balanced 3D k-d tree for exact nearest-neighbour queries. The tree is an
/// implicit median-split layout over a private copy of the points; immutable
/// after construction and safe to query from many threads.
class KdTree {
 public:
  struct Neighbor {
    std::size_t index = 0;  ///< Index into the cloud the tree was built from.
    double squared_distance = 0.0;
  };

  /// Throws DegenerateInput on an empty input.
  explicit KdTree(std::span<const Point3> points);

  std::size_t size() const { return points_.size(); }

  /// Exact nearest neighbour. Distances are computed with squared_distance(),
  /// so results match a brute-force scan bit for bit.
  Neighbor nearest(const Point3& query) const;

 private:
  void build(std::size_t lo, std::size_t hi);
  void search(const Point3& q, std::size_t lo, std::size_t hi, Neighbor& best) const;

  std::vector<Point3> points_;
  std::vector<std::uint32_t> ids_;
  std::vector<std::uint8_t> axis_;
};

}  // namespace depthbench

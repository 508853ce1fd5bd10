#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace depthbench {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

inline double squared_distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

/// Unordered set of 3D points in meters. `pixel_index` is either empty or
/// parallel to `points` and records the row-major source pixel.
struct PointCloud {
  std::vector<Point3> points;
  std::vector<std::uint32_t> pixel_index;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

}  // namespace depthbench

#include "depthbench/camera.h"

#include <cmath>
#include <string>

#include "depthbench/errors.h"

namespace depthbench {

void CameraIntrinsics::validate() const {
  if (!std::isfinite(fx) || !std::isfinite(fy) || !std::isfinite(cx) || !std::isfinite(cy)) {
    throw InvalidArgument("intrinsics: non-finite parameter");
  }
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw InvalidArgument("intrinsics: focal lengths must be positive (fx=" + std::to_string(fx) +
                          ", fy=" + std::to_string(fy) + ")");
  }
}

void CameraIntrinsics::validate_for(const DepthMap& depth) const {
  validate();
  const auto w = static_cast<double>(depth.width());
  const auto h = static_cast<double>(depth.height());
  if (cx < 0.0 || cx >= w || cy < 0.0 || cy >= h) {
    throw InvalidArgument("intrinsics: principal point (" + std::to_string(cx) + ", " +
                          std::to_string(cy) + ") outside a " + std::to_string(depth.width()) +
                          "x" + std::to_string(depth.height()) + " image");
  }
}

PointCloud backproject(const DepthMap& depth, const CameraIntrinsics& intrinsics) {
  intrinsics.validate();
  PointCloud cloud;
  cloud.points.reserve(depth.valid_count());
  cloud.pixel_index.reserve(depth.valid_count());
  for (std::size_t v = 0; v < depth.height(); ++v) {
    const double ray_y = (static_cast<double>(v) - intrinsics.cy) / intrinsics.fy;
    for (std::size_t u = 0; u < depth.width(); ++u) {
      if (!depth.valid(u, v)) continue;
      const double z = depth.at(u, v);
      const double ray_x = (static_cast<double>(u) - intrinsics.cx) / intrinsics.fx;
      cloud.points.push_back({ray_x * z, ray_y * z, z});
      cloud.pixel_index.push_back(static_cast<std::uint32_t>(v * depth.width() + u));
    }
  }
  return cloud;
}

PixelDepth project(const Point3& point, const CameraIntrinsics& intrinsics) {
  intrinsics.validate();
  if (!(point.z > 0.0)) {
    throw InvalidArgument("project: point behind or on the camera plane (z=" +
                          std::to_string(point.z) + ")");
  }
  return {intrinsics.fx * point.x / point.z + intrinsics.cx,
          intrinsics.fy * point.y / point.z + intrinsics.cy, point.z};
}

}  // namespace depthbench

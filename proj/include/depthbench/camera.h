#pragma once

#include "depthbench/depth_map.h"
#include "depthbench/point_cloud.h"

namespace depthbench {

/// Ideal pinhole camera, no distortion. Pixel (u, v) addresses the pixel
/// center; depth is the z coordinate, not the ray length.
struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  /// Throws InvalidArgument unless all parameters are finite and fx, fy > 0.
  void validate() const;

  /// Additionally requires the principal point to lie inside the image.
  void validate_for(const DepthMap& depth) const;

  friend bool operator==(const CameraIntrinsics&, const CameraIntrinsics&) = default;
};

struct PixelDepth {
  double u = 0.0;
  double v = 0.0;
  double z = 0.0;
};

/// One point per valid pixel, row-major order, with pixel indices recorded.
PointCloud backproject(const DepthMap& depth, const CameraIntrinsics& intrinsics);

/// Inverse of backproject. Throws InvalidArgument for z <= 0.
PixelDepth project(const Point3& point, const CameraIntrinsics& intrinsics);

}  // namespace depthbench

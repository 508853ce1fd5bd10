#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "depthbench/camera.h"
#include "depthbench/depth_map.h"
#include "depthbench/manifest.h"

namespace depthbench {

enum class SceneKind {
  plane,      ///< fronto-parallel plane at `plane_depth`
  two_layer,  ///< left half at `near_depth`, right half at `far_depth`
  box_room,   ///< camera at the origin inside an axis-aligned box
  noisy_gt,   ///< box_room with sensor-like noise and dropouts in the GT itself
};

enum class PredictionKind {
  copy,      ///< the ground truth
  noise,     ///< ground truth + N(0, pred_sigma) per pixel
  constant,  ///< constant plane (`constant_depth`, or the GT's lower median)
  shift,     ///< ground truth + `shift`
};

struct SyntheticParams {
  std::size_t width = 64;
  std::size_t height = 48;
  /// fx = fy = focal_scale * width; principal point at the image center.
  double focal_scale = 0.9;

  double plane_depth = 3.0;
  double near_depth = 2.0;
  double far_depth = 4.0;

  double room_half_width = 2.0;
  double room_half_height = 1.5;
  double room_depth = 5.0;

  double gt_sigma = 0.01;
  double gt_dropout = 0.05;

  PredictionKind prediction = PredictionKind::copy;
  double pred_sigma = 0.005;
  double shift = 0.1;
  std::optional<double> constant_depth;

  /// Throws InvalidArgument for non-positive sizes, depths or noise levels.
  void validate() const;
};

struct SyntheticSample {
  DepthMap gt;
  DepthMap pred;
  CameraIntrinsics intrinsics;
};

SceneKind parse_scene_kind(const std::string& name);
PredictionKind parse_prediction_kind(const std::string& name);
std::string to_string(SceneKind kind);
std::string to_string(PredictionKind kind);

/// Deterministic for a fixed (kind, params, seed). Noise is drawn from a
/// single mt19937_64 stream: first for the ground truth, then the prediction.
SyntheticSample generate_synthetic(SceneKind kind, const SyntheticParams& params, std::uint64_t seed);

enum class DepthFileFormat { pfm, png16 };

/// Writes `count` samples (sample i uses seed + i) as gt_NNNN, pred_NNNN and
/// intrinsics_NNNN.txt plus manifest.json into `dir`. PNG files use a scale of
/// 1000. Returns the manifest as written.
SampleManifest write_synthetic_dataset(const std::filesystem::path& dir, SceneKind kind,
                                       const SyntheticParams& params, std::uint64_t seed, std::size_t count,
                                       DepthFileFormat format = DepthFileFormat::pfm);

}  // namespace depthbench

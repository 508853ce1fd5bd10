#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "depthbench/depth_map.h"
#include "depthbench/eval_config.h"

namespace depthbench {

/// Per-pixel depth error statistics over the jointly valid pixels of a
/// prediction/ground-truth pair.
struct Metrics2D {
  double absrel = 0.0;
  double sqrel = 0.0;
  double rmse = 0.0;
  double rmse_log = 0.0;
  /// One accuracy per configured cutoff, same order as the config.
  std::vector<double> delta_acc;
  std::size_t valid_pixel_count = 0;
};

/// Both maps must share dimensions (resample first). A pixel contributes when
/// it is valid in both maps. Delta accuracy counts max(y/y*, y*/y) < cutoff
/// with a strict inequality.
///
/// Throws InvalidArgument on a dimension mismatch and DegenerateInput when no
/// pixel is jointly valid.
Metrics2D metrics_2d(const DepthMap& pred, const DepthMap& gt, const EvalConfig& config);

/// Unweighted mean over samples of every field; valid_pixel_count is summed.
/// Throws DegenerateInput on an empty list or inconsistent delta cutoffs.
Metrics2D aggregate_2d(std::span<const Metrics2D> records);

/// Pixel-pooled aggregate: every valid pixel of every sample weighted equally.
/// Reconstructed exactly from per-sample means and pixel counts.
Metrics2D aggregate_2d_pooled(std::span<const Metrics2D> records);

}  // namespace depthbench

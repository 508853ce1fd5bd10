#pragma once

#include <cstddef>
#include <functional>

#include "depthbench/baselines.h"
#include "depthbench/camera.h"
#include "depthbench/depth_map.h"
#include "depthbench/eval_config.h"
#include "depthbench/manifest.h"
#include "depthbench/report.h"

namespace depthbench {

struct PairResult {
  Metrics2D metrics_2d;
  Metrics3D metrics_3d;
  StageTimings timing;
};

/// The per-sample pipeline shared by every surface (CLI, bindings, tests):
/// validity on both maps, nearest-neighbour resampling of the prediction to
/// the ground-truth resolution, 2D metrics on jointly valid pixels, then
/// back-projection of each map on its own validity and the 3D suite.
PairResult evaluate_pair(const DepthMap& pred, const DepthMap& gt, const CameraIntrinsics& intrinsics,
                         const EvalConfig& config);

/// Runs `task(i)` for i in [0, count) on `workers` threads. Each index is
/// handled exactly once; results must be written to per-index slots.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task);

/// One record per manifest entry, in manifest order. Per-sample failures
/// become failed records; nothing is skipped.
Report evaluate_manifest(const SampleManifest& manifest, const EvalConfig& config, std::size_t workers = 1);

/// Evaluates median-plane predictions built from each entry's ground truth.
Report run_median_plane(const SampleManifest& manifest, const EvalConfig& config, std::size_t workers = 1);

/// For each validation entry, retrieves the train ground truth with the
/// lowest absrel and evaluates it as the prediction. Throws if any train map
/// cannot be loaded, since every query depends on the full candidate set.
Report run_oracle_nn(const SampleManifest& val, const SampleManifest& train, const EvalConfig& config,
                     std::size_t workers = 1, const RetrievalOptions& options = {});

/// 0 when every sample succeeded, 1 otherwise.
int exit_code_for(const Report& report);

}  // namespace depthbench

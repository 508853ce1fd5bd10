#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "depthbench/depth_map.h"
#include "depthbench/eval_config.h"

namespace depthbench {

/// Constant prediction at the lower median of the ground truth's valid
/// values, on the ground truth's own validity mask. Throws DegenerateInput if
/// the ground truth has no valid pixel.
DepthMap median_plane(const DepthMap& gt);

struct RetrievalResult {
  std::size_t best_index = 0;
  double best_absrel = 0.0;
  std::size_t candidates_evaluated = 0;
};

struct RetrievalOptions {
  /// Rank candidates on maps downsampled by this factor (nearest neighbour)
  /// before reporting the winner's full-resolution absrel. 1 = exact scan.
  std::size_t downsample_factor = 1;
};

/// Exhaustive scan for the candidate with the smallest absrel when used as a
/// prediction of `query`. Candidates are resampled to the query resolution.
/// Candidates without jointly valid pixels are skipped; ties go to the lowest
/// index. Throws DegenerateInput if every candidate is skipped.
RetrievalResult oracle_nn(const DepthMap& query, std::span<const DepthMap> train_set, const EvalConfig& config,
                          const RetrievalOptions& options = {});

}  // namespace depthbench

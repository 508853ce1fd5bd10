#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "depthbench/assignment.h"
#include "depthbench/eval_config.h"
#include "depthbench/point_cloud.h"

namespace depthbench {

/// Point-cloud comparison between a ground truth G and a reconstruction R.
struct Metrics3D {
  double chamfer = 0.0;       ///< squared meters
  double emd = 0.0;           ///< meters, mean per point
  double completeness = 0.0;  ///< meters, mean per point
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
  double iou = 0.0;
  double threshold_m = 0.0;
};

struct FScore {
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
  double iou = 0.0;
};

/// Largest cloud size emd_exact accepts by default.
inline constexpr std::size_t kExactEmdCap = 512;

/// Exact Euclidean distance from each query point to its nearest target point.
/// Throws DegenerateInput if the target is empty.
std::vector<double> nn_distances(const PointCloud& query, const PointCloud& target);

/// Symmetric nearest-neighbour squared distance. `normalized` averages each
/// direction over its own cloud; otherwise both directions are raw sums.
double chamfer(const PointCloud& g, const PointCloud& r, bool normalized);

/// Optimal bijection from g to r. Throws InvalidArgument on a size mismatch
/// or when the clouds exceed `cap` points; use emd_approx for those.
Assignment emd_exact(const PointCloud& g, const PointCloud& r, std::size_t cap = kExactEmdCap);

/// Auction schedule used by emd_approx and completeness for a cost matrix.
AuctionSchedule emd_schedule(const CostMatrix& cost, const EvalConfig& config);

/// Both clouds subsampled to config.emd_sample_count with `seed`, then
/// matched by the epsilon-scaling auction. Mean per-point cost in meters.
/// Never below the exact optimum on the same sampled pair.
double emd_approx(const PointCloud& g, const PointCloud& r, std::uint64_t seed, const EvalConfig& config);

/// Assignment cost taken from the reconstruction side: every sampled point of
/// r is matched into g. Same sampling and solver as emd_approx.
double completeness(const PointCloud& g, const PointCloud& r, std::uint64_t seed, const EvalConfig& config);

/// Recall counts g-points within strictly less than t of r, precision the
/// converse. F and IoU are 0 when both are 0.
FScore fscore_suite(const PointCloud& g, const PointCloud& r, double t);

/// Everything above for one prediction against one ground truth, using
/// config.rng_seed for the sampled metrics.
Metrics3D metrics_3d(const PointCloud& pred, const PointCloud& gt, const EvalConfig& config);

/// Unweighted mean of every field across samples. Throws DegenerateInput on
/// an empty list.
Metrics3D aggregate_3d(std::span<const Metrics3D> records);

}  // namespace depthbench

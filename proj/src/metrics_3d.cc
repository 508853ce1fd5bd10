#include "depthbench/metrics_3d.h"

#include <cmath>
#include <string>

#include "depthbench/errors.h"
#include "depthbench/kdtree.h"
#include "depthbench/sampling.h"
#include "depthbench/summation.h"

namespace depthbench {
namespace {

std::vector<double> nn_squared(std::span<const Point3> query, const KdTree& tree) {
  std::vector<double> out(query.size());
  for (std::size_t i = 0; i < query.size(); ++i) out[i] = tree.nearest(query[i]).squared_distance;
  return out;
}

void require_nonempty(const PointCloud& g, const PointCloud& r, const char* what) {
  if (g.empty() || r.empty()) throw DegenerateInput(std::string(what) + ": empty point cloud");
}

double chamfer_from(std::span<const double> g_to_r, std::span<const double> r_to_g, bool normalized) {
  const double forward = compensated_sum(g_to_r);
  const double backward = compensated_sum(r_to_g);
  if (!normalized) return forward + backward;
  return forward / static_cast<double>(g_to_r.size()) + backward / static_cast<double>(r_to_g.size());
}

double fraction_within(std::span<const double> squared, double t) {
  std::size_t hits = 0;
  for (double d2 : squared) {
    if (std::sqrt(d2) < t) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(squared.size());
}

FScore fscore_from(double precision, double recall) {
  FScore s{precision, recall, 0.0, 0.0};
  if (precision + recall > 0.0) s.fscore = 2.0 * precision * recall / (precision + recall);
  const double union_part = precision + recall - precision * recall;
  if (union_part > 0.0) s.iou = precision * recall / union_part;
  return s;
}

// Sampled pair shared by emd_approx and completeness. The same seed drives
// both clouds so identical inputs give identical samples.
std::pair<PointCloud, PointCloud> sample_pair(const PointCloud& g, const PointCloud& r, std::uint64_t seed,
                                              const EvalConfig& config) {
  return {subsample(g, config.emd_sample_count, seed), subsample(r, config.emd_sample_count, seed)};
}

}  // namespace

std::vector<double> nn_distances(const PointCloud& query, const PointCloud& target) {
  if (target.empty()) throw DegenerateInput("nn_distances: empty target cloud");
  const KdTree tree(target.points);
  auto d = nn_squared(query.points, tree);
  for (double& x : d) x = std::sqrt(x);
  return d;
}

double chamfer(const PointCloud& g, const PointCloud& r, bool normalized) {
  require_nonempty(g, r, "chamfer");
  const KdTree g_tree(g.points);
  const KdTree r_tree(r.points);
  return chamfer_from(nn_squared(g.points, r_tree), nn_squared(r.points, g_tree), normalized);
}

Assignment emd_exact(const PointCloud& g, const PointCloud& r, std::size_t cap) {
  require_nonempty(g, r, "emd_exact");
  if (g.size() != r.size()) {
    throw InvalidArgument("emd_exact: clouds differ in size (" + std::to_string(g.size()) + " vs " +
                          std::to_string(r.size()) + ")");
  }
  if (g.size() > cap) {
    throw InvalidArgument("emd_exact: " + std::to_string(g.size()) + " points exceeds the exact-solver cap of " +
                          std::to_string(cap) + "; use emd_approx");
  }
  return hungarian(CostMatrix::euclidean(g.points, r.points));
}

AuctionSchedule emd_schedule(const CostMatrix& cost, const EvalConfig& config) {
  return {cost.max_cost() / 8.0, config.fscore_threshold_m / 10.0, 4.0};
}

double emd_approx(const PointCloud& g, const PointCloud& r, std::uint64_t seed, const EvalConfig& config) {
  require_nonempty(g, r, "emd_approx");
  const auto [gs, rs] = sample_pair(g, r, seed, config);
  const auto cost = CostMatrix::euclidean(gs.points, rs.points);
  return auction(cost, emd_schedule(cost, config)).mean_cost();
}

double completeness(const PointCloud& g, const PointCloud& r, std::uint64_t seed, const EvalConfig& config) {
  require_nonempty(g, r, "completeness");
  const auto [gs, rs] = sample_pair(g, r, seed, config);
  const auto cost = CostMatrix::euclidean(rs.points, gs.points);
  return auction(cost, emd_schedule(cost, config)).mean_cost();
}

FScore fscore_suite(const PointCloud& g, const PointCloud& r, double t) {
  require_nonempty(g, r, "fscore_suite");
  if (!(t > 0.0)) throw InvalidArgument("fscore_suite: threshold must be positive");
  const KdTree g_tree(g.points);
  const KdTree r_tree(r.points);
  const double recall = fraction_within(nn_squared(g.points, r_tree), t);
  const double precision = fraction_within(nn_squared(r.points, g_tree), t);
  return fscore_from(precision, recall);
}

Metrics3D metrics_3d(const PointCloud& pred, const PointCloud& gt, const EvalConfig& config) {
  require_nonempty(gt, pred, "metrics_3d");
  const KdTree gt_tree(gt.points);
  const KdTree pred_tree(pred.points);
  const auto gt_to_pred = nn_squared(gt.points, pred_tree);
  const auto pred_to_gt = nn_squared(pred.points, gt_tree);

  Metrics3D m;
  m.threshold_m = config.fscore_threshold_m;
  m.chamfer = chamfer_from(gt_to_pred, pred_to_gt, config.chamfer_normalized);
  const auto s = fscore_from(fraction_within(pred_to_gt, m.threshold_m), fraction_within(gt_to_pred, m.threshold_m));
  m.precision = s.precision;
  m.recall = s.recall;
  m.fscore = s.fscore;
  m.iou = s.iou;
  m.emd = emd_approx(gt, pred, config.rng_seed, config);
  m.completeness = completeness(gt, pred, config.rng_seed, config);
  return m;
}

Metrics3D aggregate_3d(std::span<const Metrics3D> records) {
  if (records.empty()) throw DegenerateInput("aggregate_3d: no records");
  const auto n = static_cast<double>(records.size());
  auto mean_of = [&](double Metrics3D::*field) {
    std::vector<double> v;
    v.reserve(records.size());
    for (const auto& r : records) v.push_back(r.*field);
    return order_free_sum(std::move(v)) / n;
  };
  Metrics3D out;
  out.chamfer = mean_of(&Metrics3D::chamfer);
  out.emd = mean_of(&Metrics3D::emd);
  out.completeness = mean_of(&Metrics3D::completeness);
  out.precision = mean_of(&Metrics3D::precision);
  out.recall = mean_of(&Metrics3D::recall);
  out.fscore = mean_of(&Metrics3D::fscore);
  out.iou = mean_of(&Metrics3D::iou);
  out.threshold_m = records.front().threshold_m;
  return out;
}

}  // namespace depthbench

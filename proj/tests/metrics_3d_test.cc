#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "depthbench/assignment.h"
#include "depthbench/errors.h"
#include "depthbench/kdtree.h"
#include "depthbench/metrics_3d.h"
#include "depthbench/sampling.h"
#include "oracles.h"

namespace depthbench {
namespace {

PointCloud cloud(std::vector<Point3> pts) { return PointCloud{std::move(pts), {}}; }

PointCloud transformed(const PointCloud& c, double scale, double angle = 0.0, Point3 t = {}) {
  PointCloud out;
  const double ca = std::cos(angle), sa = std::sin(angle);
  for (const auto& p : c.points) {
    // rotation about the axis (0, 0, 1) then (1, 0, 0)
    const double x = ca * p.x - sa * p.y;
    const double y = sa * p.x + ca * p.y;
    const double y2 = ca * y - sa * p.z;
    const double z2 = sa * y + ca * p.z;
    out.points.push_back({scale * x + t.x, scale * y2 + t.y, scale * z2 + t.z});
  }
  return out;
}

TEST(KdTree, MatchesBruteForceExactly) {
  std::mt19937_64 rng(31);
  for (std::size_t n : {1u, 2u, 7u, 9u, 100u, 1000u}) {
    const auto target = testing::random_points(rng, n);
    const auto query = testing::random_points(rng, 500);
    const KdTree tree(target);
    for (const auto& q : query) {
      const auto hit = tree.nearest(q);
      EXPECT_EQ(hit.squared_distance, testing::brute_nn_squared(q, target));
      EXPECT_EQ(squared_distance(q, target[hit.index]), hit.squared_distance);
    }
  }
}

TEST(KdTree, HandlesDuplicatesAndDegenerateAxes) {
  std::vector<Point3> pts(50, Point3{1.0, 1.0, 1.0});
  for (int i = 0; i < 50; ++i) pts.push_back({static_cast<double>(i), 0.0, 0.0});
  const KdTree tree(pts);
  EXPECT_EQ(tree.nearest({1.0, 1.0, 1.0}).squared_distance, 0.0);
  EXPECT_EQ(tree.nearest({20.4, 0.0, 0.0}).squared_distance, testing::brute_nn_squared({20.4, 0.0, 0.0}, pts));
  EXPECT_THROW(KdTree(std::vector<Point3>{}), DegenerateInput);
}

TEST(NnDistances, Examples) {
  const auto a = cloud({{0, 0, 0}, {1, 2, 3}});
  EXPECT_EQ(nn_distances(a, a), (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(nn_distances(cloud({{0, 0, 0}}), cloud({{1, 0, 0}, {0, 2, 0}})), (std::vector<double>{1.0}));
  EXPECT_THROW(nn_distances(a, PointCloud{}), DegenerateInput);

  std::mt19937_64 rng(32);
  const auto q = testing::random_cloud(rng, 1000), t = testing::random_cloud(rng, 1000);
  EXPECT_EQ(nn_distances(q, t), testing::brute_nn(q.points, t.points));
}

TEST(Chamfer, Examples) {
  const auto g = cloud({{0, 0, 0}});
  const auto r = cloud({{1, 0, 0}, {2, 0, 0}});
  EXPECT_EQ(chamfer(g, r, false), 6.0);
  EXPECT_EQ(chamfer(g, r, true), 3.5);
  EXPECT_EQ(chamfer(r, r, true), 0.0);
  EXPECT_EQ(chamfer(transformed(g, 2.0), transformed(r, 2.0), false), 24.0);
  EXPECT_EQ(chamfer(transformed(g, 2.0), transformed(r, 2.0), true), 14.0);
  EXPECT_THROW(chamfer(g, PointCloud{}, true), DegenerateInput);
}

TEST(Chamfer, PropertiesOnRandomClouds) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = testing::random_cloud(rng, 50 + trial * 17);
    const auto b = testing::random_cloud(rng, 80 + trial * 5);
    for (bool normalized : {false, true}) {
      const double ab = chamfer(a, b, normalized);
      EXPECT_EQ(ab, chamfer(b, a, normalized));
      EXPECT_TRUE(testing::rel_close(ab, testing::brute_chamfer(a.points, b.points, normalized), 1e-12));
      const double moved = chamfer(transformed(a, 1.0, 0.7, {3, -2, 5}), transformed(b, 1.0, 0.7, {3, -2, 5}),
                                   normalized);
      EXPECT_TRUE(testing::rel_close(moved, ab, 1e-9));
      EXPECT_TRUE(testing::rel_close(chamfer(transformed(a, 10.0), transformed(b, 10.0), normalized), 100.0 * ab,
                                     1e-9));
    }
  }
}

TEST(EmdExact, EnumeratedExamples) {
  const auto g = cloud({{0, 0, 0}, {1, 0, 0}});
  const auto r = cloud({{0, 0, 0}, {3, 0, 0}});
  const auto a = emd_exact(g, r);
  EXPECT_EQ(a.cost, 2.0);
  EXPECT_EQ(a.mean_cost(), 1.0);
  EXPECT_EQ(a.target_of, (std::vector<std::size_t>{0, 1}));

  const auto crossing = emd_exact(cloud({{0, 0, 0}, {10, 0, 0}}), cloud({{1, 0, 0}, {9, 0, 0}}));
  EXPECT_EQ(crossing.mean_cost(), 1.0);

  const auto same = emd_exact(g, g);
  EXPECT_EQ(same.cost, 0.0);
}

TEST(EmdExact, MatchesPermutationEnumeration) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const auto g = testing::random_cloud(rng, n), r = testing::random_cloud(rng, n);
    EXPECT_TRUE(testing::rel_close(emd_exact(g, r).cost, testing::enumerate_emd(g.points, r.points), 1e-12));
  }
}

TEST(EmdExact, RejectsMismatchAndOversize) {
  std::mt19937_64 rng(35);
  EXPECT_THROW(emd_exact(testing::random_cloud(rng, 3), testing::random_cloud(rng, 4)), InvalidArgument);
  EXPECT_THROW(emd_exact(testing::random_cloud(rng, 20), testing::random_cloud(rng, 20), 10), InvalidArgument);
}

TEST(Assignment, IsABijectionWithConsistentCost) {
  std::mt19937_64 rng(36);
  const auto g = testing::random_points(rng, 64), r = testing::random_points(rng, 64);
  const auto cost = CostMatrix::euclidean(g, r);
  for (const auto& a : {hungarian(cost), auction(cost, {cost.max_cost() / 8, 1e-4, 4})}) {
    std::vector<int> hits(64, 0);
    for (auto t : a.target_of) ++hits[t];
    EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    double sum = 0.0;
    for (std::size_t i = 0; i < 64; ++i) sum += std::sqrt(squared_distance(g[i], r[a.target_of[i]]));
    EXPECT_NEAR(a.cost, sum, 1e-12);
  }
}

TEST(Auction, UpperBoundsExactWithinEpsilonGap) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + 12 * trial;
    const auto g = testing::random_points(rng, n), r = testing::random_points(rng, n);
    const auto cost = CostMatrix::euclidean(g, r);
    const double final_eps = 1e-3;
    const auto approx = auction(cost, {cost.max_cost() / 8, final_eps, 4});
    const auto exact = hungarian(cost);
    EXPECT_GE(approx.cost, exact.cost);
    EXPECT_LE(approx.cost - exact.cost, static_cast<double>(n) * final_eps);
  }
}

TEST(Auction, SingletonAndConstantCosts) {
  const auto one = auction(CostMatrix(1, {2.5}), {1.0, 0.1, 4});
  EXPECT_EQ(one.target_of, (std::vector<std::size_t>{0}));
  EXPECT_EQ(one.cost, 2.5);
  const auto zero = auction(CostMatrix(2, {0, 0, 0, 0}), {1.0, 0.1, 4});
  EXPECT_EQ(zero.cost, 0.0);
  EXPECT_THROW(auction(CostMatrix(1, {1.0}), {1.0, 0.0, 4}), InvalidArgument);
}

TEST(EmdApprox, IdenticalCloudsAreZero) {
  std::mt19937_64 rng(38);
  const auto a = testing::random_cloud(rng, 3000);
  EvalConfig c;
  EXPECT_NEAR(emd_approx(a, a, 1, c), 0.0, 1e-9);
  const auto small = testing::random_cloud(rng, 100);  // sampled with replacement
  EXPECT_NEAR(emd_approx(small, small, 1, c), 0.0, 1e-9);
}

TEST(EmdApprox, WithinOnePercentOfExactOnSampledPoints) {
  std::mt19937_64 rng(39);
  EvalConfig c;
  c.emd_sample_count = 256;
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = testing::random_cloud(rng, 400), r = testing::random_cloud(rng, 300);
    const double approx = emd_approx(g, r, trial, c);
    const double exact = emd_exact(subsample(g, 256, trial), subsample(r, 256, trial)).mean_cost();
    EXPECT_GE(approx, exact);
    EXPECT_LE((approx - exact) / exact, 0.01);
  }
}

TEST(EmdApprox, DeterministicAndScaleCovariant) {
  std::mt19937_64 rng(40);
  const auto g = testing::random_cloud(rng, 700), r = testing::random_cloud(rng, 900);
  EvalConfig c;
  c.emd_sample_count = 512;
  EXPECT_EQ(emd_approx(g, r, 3, c), emd_approx(g, r, 3, c));
  EXPECT_THROW(emd_approx(g, PointCloud{}, 3, c), DegenerateInput);
  // Scale the threshold with the geometry so the auction schedule scales too.
  EvalConfig scaled = c;
  scaled.fscore_threshold_m *= 4.0;
  const double base = emd_approx(g, r, 3, c);
  EXPECT_TRUE(testing::rel_close(emd_approx(transformed(g, 4.0), transformed(r, 4.0), 3, scaled), 4.0 * base, 1e-9));
}

TEST(Completeness, Examples) {
  EvalConfig c;
  c.emd_sample_count = 64;
  const auto one_a = cloud({{0, 0, 0}});
  const auto one_b = cloud({{0, 0, 2}});
  EXPECT_NEAR(completeness(one_a, one_b, 0, c), 2.0, 1e-12);
  std::mt19937_64 rng(41);
  const auto a = testing::random_cloud(rng, 100);
  EXPECT_NEAR(completeness(a, a, 0, c), 0.0, 1e-9);
}

TEST(Completeness, AgreesWithEmdOnEqualSizeSamples) {
  std::mt19937_64 rng(42);
  EvalConfig c;
  c.emd_sample_count = 128;
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = testing::random_cloud(rng, 128), r = testing::random_cloud(rng, 128);
    const double exact = emd_exact(subsample(g, 128, trial), subsample(r, 128, trial)).mean_cost();
    const double comp = completeness(g, r, trial, c);
    const double emd = emd_approx(g, r, trial, c);
    // Both are feasible bijections on the same pair: within one final epsilon
    // per point of the shared optimum.
    EXPECT_GE(comp, exact);
    EXPECT_LE(comp - exact, c.fscore_threshold_m / 10);
    EXPECT_LE(std::abs(comp - emd), c.fscore_threshold_m / 10);
  }
}

TEST(FScore, Examples) {
  const auto g = cloud({{0, 0, 0}, {1, 0, 0}});
  const auto r = cloud({{0, 0, 0}, {0.5, 0, 0}});
  const auto s = fscore_suite(g, r, 0.01);
  EXPECT_EQ(s.precision, 0.5);
  EXPECT_EQ(s.recall, 0.5);
  EXPECT_EQ(s.fscore, 0.5);
  EXPECT_DOUBLE_EQ(s.iou, 1.0 / 3.0);

  const auto same = fscore_suite(g, g, 1e-6);
  EXPECT_EQ(same.fscore, 1.0);
  EXPECT_EQ(same.iou, 1.0);

  const auto far = fscore_suite(g, cloud({{5, 5, 5}}), 0.01);
  EXPECT_EQ(far.precision, 0.0);
  EXPECT_EQ(far.recall, 0.0);
  EXPECT_EQ(far.fscore, 0.0);
  EXPECT_EQ(far.iou, 0.0);

  // distance exactly t does not count
  EXPECT_EQ(fscore_suite(cloud({{0, 0, 0}}), cloud({{0.5, 0, 0}}), 0.5).fscore, 0.0);
  EXPECT_THROW(fscore_suite(g, r, 0.0), InvalidArgument);
  EXPECT_THROW(fscore_suite(PointCloud{}, r, 0.1), DegenerateInput);
}

TEST(FScore, MonotoneInThresholdAndIouIdentity) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_cloud(rng, 200), r = testing::random_cloud(rng, 150);
    double prev_f = 0.0, prev_iou = 0.0;
    for (double t : {0.01, 0.05, 0.1, 0.2, 0.5, 1.0}) {
      const auto s = fscore_suite(g, r, t);
      EXPECT_GE(s.fscore, prev_f);
      EXPECT_GE(s.iou, prev_iou);
      EXPECT_LE(s.iou, s.fscore);
      EXPECT_NEAR(s.iou, s.fscore / (2.0 - s.fscore), 1e-12);
      prev_f = s.fscore;
      prev_iou = s.iou;
    }
    // Rigid motion and joint scaling of clouds and threshold.
    const auto base = fscore_suite(g, r, 0.1);
    const auto moved = fscore_suite(transformed(g, 2.0, 0.3, {1, 2, 3}), transformed(r, 2.0, 0.3, {1, 2, 3}), 0.2);
    EXPECT_NEAR(moved.fscore, base.fscore, 0.02);  // boundary points may flip under rounding
  }
}

TEST(Metrics3D, PerfectPrediction) {
  std::mt19937_64 rng(44);
  const auto a = testing::random_cloud(rng, 500);
  const auto m = metrics_3d(a, a, EvalConfig{});
  EXPECT_EQ(m.chamfer, 0.0);
  EXPECT_NEAR(m.emd, 0.0, 1e-9);
  EXPECT_NEAR(m.completeness, 0.0, 1e-9);
  EXPECT_EQ(m.fscore, 1.0);
  EXPECT_EQ(m.iou, 1.0);
  EXPECT_EQ(m.threshold_m, 0.01);
}

TEST(Metrics3D, BundlesTheIndividualMetrics) {
  std::mt19937_64 rng(45);
  const auto pred = testing::random_cloud(rng, 300, 0.05), gt = testing::random_cloud(rng, 400, 0.05);
  EvalConfig c;
  c.emd_sample_count = 128;
  const auto m = metrics_3d(pred, gt, c);
  EXPECT_EQ(m.chamfer, chamfer(gt, pred, true));
  const auto s = fscore_suite(gt, pred, c.fscore_threshold_m);
  EXPECT_EQ(m.precision, s.precision);
  EXPECT_EQ(m.recall, s.recall);
  EXPECT_EQ(m.fscore, s.fscore);
  EXPECT_EQ(m.emd, emd_approx(gt, pred, c.rng_seed, c));
  EXPECT_EQ(m.completeness, completeness(gt, pred, c.rng_seed, c));
  c.chamfer_normalized = false;
  EXPECT_EQ(metrics_3d(pred, gt, c).chamfer, chamfer(gt, pred, false));
  EXPECT_THROW(metrics_3d(PointCloud{}, gt, c), DegenerateInput);
}

}  // namespace
}  // namespace depthbench

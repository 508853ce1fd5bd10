#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <tuple>

#include "depthbench/camera.h"
#include "depthbench/depth_map.h"
#include "depthbench/errors.h"
#include "depthbench/eval_config.h"
#include "depthbench/sampling.h"
#include "oracles.h"

namespace depthbench {
namespace {

const CameraIntrinsics kCam{100.0, 100.0, 50.0, 50.0};

TEST(DepthMap, DerivesValidityFromValues) {
  const DepthMap m(3, 1, {1.0, 0.0, std::numeric_limits<double>::quiet_NaN()});
  EXPECT_TRUE(m.valid(0, 0));
  EXPECT_FALSE(m.valid(1, 0));
  EXPECT_FALSE(m.valid(2, 0));
  EXPECT_EQ(m.valid_count(), 1u);
}

TEST(DepthMap, RejectsInconsistentInput) {
  EXPECT_THROW(DepthMap(2, 2, {1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(DepthMap(1, 1, {-1.0}, {1}), InvalidArgument);
  EXPECT_THROW(DepthMap(2, 1, {1.0, 1.0}, {1}), InvalidArgument);
}

TEST(Backproject, PrincipalPointRay) {
  std::vector<double> v(101 * 101, 0.0);
  v[50 * 101 + 50] = 3.0;
  const auto cloud = backproject(DepthMap(101, 101, v), kCam);
  ASSERT_EQ(cloud.size(), 1u);
  EXPECT_EQ(cloud.points[0], (Point3{0.0, 0.0, 3.0}));
}

TEST(Backproject, OffAxisPixel) {
  std::vector<double> v(151 * 51, 0.0);
  v[50 * 151 + 150] = 2.0;
  const auto cloud = backproject(DepthMap(151, 51, v), kCam);
  ASSERT_EQ(cloud.size(), 1u);
  EXPECT_DOUBLE_EQ(cloud.points[0].x, 2.0);
  EXPECT_DOUBLE_EQ(cloud.points[0].y, 0.0);
  EXPECT_DOUBLE_EQ(cloud.points[0].z, 2.0);
  EXPECT_EQ(cloud.pixel_index[0], 50u * 151u + 150u);
}

TEST(Backproject, InvalidPixelsEmitNothing) {
  const auto cloud = backproject(DepthMap(2, 1, {0.0, 1.0}), kCam);
  ASSERT_EQ(cloud.size(), 1u);
  EXPECT_EQ(cloud.pixel_index[0], 1u);
  EXPECT_TRUE(backproject(DepthMap(2, 1, {0.0, 0.0}), kCam).empty());
}

TEST(Backproject, RejectsNonFiniteIntrinsics) {
  const DepthMap m(1, 1, {1.0});
  EXPECT_THROW(backproject(m, {std::numeric_limits<double>::infinity(), 1, 0, 0}), InvalidArgument);
  EXPECT_THROW(backproject(m, {1, std::nan(""), 0, 0}), InvalidArgument);
  EXPECT_THROW(backproject(m, {-1, 1, 0, 0}), InvalidArgument);
}

TEST(Project, InvertsExamples) {
  const auto a = project({0.0, 0.0, 3.0}, kCam);
  EXPECT_EQ(std::tie(a.u, a.v, a.z), std::make_tuple(50.0, 50.0, 3.0));
  const auto b = project({2.0, 0.0, 2.0}, kCam);
  EXPECT_DOUBLE_EQ(b.u, 150.0);
  EXPECT_DOUBLE_EQ(b.v, 50.0);
  EXPECT_THROW(project({1.0, 1.0, 0.0}, kCam), InvalidArgument);
  EXPECT_THROW(project({1.0, 1.0, -2.0}, kCam), InvalidArgument);
}

TEST(Project, RoundTripOnRandomMaps) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> focal(50.0, 800.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto depth = testing::random_depth(rng, 40, 30);
    std::uniform_real_distribution<double> cx(0.0, 40.0), cy(0.0, 30.0);
    const CameraIntrinsics k{focal(rng), focal(rng), cx(rng), cy(rng)};
    const auto cloud = backproject(depth, k);
    ASSERT_EQ(cloud.size(), depth.valid_count());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const auto p = project(cloud.points[i], k);
      const std::size_t u = cloud.pixel_index[i] % 40;
      const std::size_t v = cloud.pixel_index[i] / 40;
      EXPECT_NEAR(p.u, static_cast<double>(u), 1e-6);
      EXPECT_NEAR(p.v, static_cast<double>(v), 1e-6);
      EXPECT_NEAR(p.z, depth.at(u, v), 1e-6);
    }
  }
}

TEST(Backproject, ScalesLinearlyWithDepth) {
  std::mt19937_64 rng(3);
  const auto depth = testing::random_depth(rng, 16, 12);
  std::vector<double> scaled(depth.values().begin(), depth.values().end());
  for (double& z : scaled) z *= 2.0;
  const auto a = backproject(depth, kCam);
  const auto b = backproject(DepthMap(16, 12, scaled), kCam);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    // Scaling by a power of two is exact in floating point.
    EXPECT_EQ(b.points[i].x, 2.0 * a.points[i].x);
    EXPECT_EQ(b.points[i].y, 2.0 * a.points[i].y);
    EXPECT_EQ(b.points[i].z, 2.0 * a.points[i].z);
  }
}

TEST(ApplyValidity, ClampsToConfiguredRange) {
  const EvalConfig config;
  const auto m = apply_validity(DepthMap(4, 1, {0.0, 10.5, 2.5, 10.0}), config);
  EXPECT_FALSE(m.valid(0, 0));
  EXPECT_FALSE(m.valid(1, 0));
  EXPECT_TRUE(m.valid(2, 0));
  EXPECT_EQ(m.at(2, 0), 2.5);
  EXPECT_TRUE(m.valid(3, 0));  // upper bound is inclusive
  EXPECT_FALSE(apply_validity(DepthMap(1, 1, {0.001}), config).valid(0, 0));  // lower bound is exclusive
}

TEST(Resample, NearestNeighbourKeepsValuesAndValidity) {
  const DepthMap src(2, 2, {1.0, 2.0, 0.0, 4.0});
  const auto up = resample_nearest(src, 4, 4);
  EXPECT_EQ(up.at(0, 0), 1.0);
  EXPECT_EQ(up.at(1, 1), 1.0);
  EXPECT_EQ(up.at(3, 0), 2.0);
  EXPECT_FALSE(up.valid(0, 3));
  EXPECT_EQ(up.at(3, 3), 4.0);
  const auto down = resample_nearest(up, 2, 2);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(down.valid_mask()[i], src.valid_mask()[i]);
}

TEST(Subsample, PermutationWhenSizesMatch) {
  std::mt19937_64 rng(5);
  const auto cloud = testing::random_cloud(rng, 100);
  auto out = subsample(cloud, 100, 42);
  ASSERT_EQ(out.size(), 100u);
  auto key = [](const Point3& p) { return std::make_tuple(p.x, p.y, p.z); };
  std::multiset<std::tuple<double, double, double>> a, b;
  for (const auto& p : cloud.points) a.insert(key(p));
  for (const auto& p : out.points) b.insert(key(p));
  EXPECT_EQ(a, b);
}

TEST(Subsample, DeterministicAndDistinct) {
  std::mt19937_64 rng(6);
  const auto cloud = testing::random_cloud(rng, 10000);
  const auto a = subsample(cloud, 2048, 9);
  const auto b = subsample(cloud, 2048, 9);
  EXPECT_EQ(a.points, b.points);
  std::set<std::tuple<double, double, double>> distinct;
  for (const auto& p : a.points) distinct.insert({p.x, p.y, p.z});
  EXPECT_EQ(distinct.size(), 2048u);
  EXPECT_NE(subsample(cloud, 2048, 10).points, a.points);
}

TEST(Subsample, WithReplacementWhenCloudIsSmall) {
  const PointCloud one{{{1.0, 2.0, 3.0}}, {}};
  const auto out = subsample(one, 5, 0);
  ASSERT_EQ(out.size(), 5u);
  for (const auto& p : out.points) EXPECT_EQ(p, (Point3{1.0, 2.0, 3.0}));
  EXPECT_THROW(subsample(PointCloud{}, 3, 0), DegenerateInput);
}

TEST(EvalConfig, ValidatesInvariants) {
  EXPECT_NO_THROW(EvalConfig{}.validate());
  EvalConfig c;
  c.min_depth_m = 5.0;
  c.max_depth_m = 1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.delta_thresholds = {1.25, 1.1};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.delta_thresholds = {1.0};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.emd_sample_count = 1;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.fscore_threshold_m = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(EvalConfig, JsonOverlayRejectsUnknownKeys) {
  const auto c = config_from_json(nlohmann::json::parse(R"({"fscore_threshold_m": 0.05, "rng_seed": 7})"));
  EXPECT_EQ(c.fscore_threshold_m, 0.05);
  EXPECT_EQ(c.rng_seed, 7u);
  EXPECT_EQ(c.emd_sample_count, 2048u);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"fscore_treshold": 0.05})")), InvalidArgument);
  EXPECT_EQ(config_digest(EvalConfig{}), config_digest(EvalConfig{}));
  EXPECT_NE(config_digest(EvalConfig{}), config_digest(c));
}

}  // namespace
}  // namespace depthbench

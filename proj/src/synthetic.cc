#include "depthbench/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "depthbench/baselines.h"
#include "depthbench/depth_io.h"
#include "depthbench/errors.h"
#include "depthbench/sampling.h"

namespace depthbench {

void SyntheticParams::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (width == 0 || height == 0) throw InvalidArgument("synthetic: image size must be positive");
  if (!positive(focal_scale)) throw InvalidArgument("synthetic: focal_scale must be positive");
  if (!positive(plane_depth) || !positive(near_depth) || !positive(far_depth)) {
    throw InvalidArgument("synthetic: depths must be positive");
  }
  if (!positive(room_half_width) || !positive(room_half_height) || !positive(room_depth)) {
    throw InvalidArgument("synthetic: room dimensions must be positive");
  }
  if (!(gt_sigma >= 0.0) || !(pred_sigma >= 0.0) || !std::isfinite(shift)) {
    throw InvalidArgument("synthetic: noise levels must be non-negative");
  }
  if (!(gt_dropout >= 0.0 && gt_dropout < 1.0)) throw InvalidArgument("synthetic: gt_dropout must be in [0, 1)");
  if (constant_depth && !positive(*constant_depth)) throw InvalidArgument("synthetic: constant_depth must be positive");
}

SceneKind parse_scene_kind(const std::string& name) {
  if (name == "plane") return SceneKind::plane;
  if (name == "two_layer") return SceneKind::two_layer;
  if (name == "box_room") return SceneKind::box_room;
  if (name == "noisy_gt") return SceneKind::noisy_gt;
  throw InvalidArgument("unknown scene kind '" + name + "' (plane|two_layer|box_room|noisy_gt)");
}

PredictionKind parse_prediction_kind(const std::string& name) {
  if (name == "copy") return PredictionKind::copy;
  if (name == "noise") return PredictionKind::noise;
  if (name == "constant") return PredictionKind::constant;
  if (name == "shift") return PredictionKind::shift;
  throw InvalidArgument("unknown prediction kind '" + name + "' (copy|noise|constant|shift)");
}

std::string to_string(SceneKind kind) {
  switch (kind) {
    case SceneKind::plane:
      return "plane";
    case SceneKind::two_layer:
      return "two_layer";
    case SceneKind::box_room:
      return "box_room";
    case SceneKind::noisy_gt:
      return "noisy_gt";
  }
  return "unknown";
}

std::string to_string(PredictionKind kind) {
  switch (kind) {
    case PredictionKind::copy:
      return "copy";
    case PredictionKind::noise:
      return "noise";
    case PredictionKind::constant:
      return "constant";
    case PredictionKind::shift:
      return "shift";
  }
  return "unknown";
}

namespace {

// Planar depth of the first wall hit by the pixel ray (ray direction has z = 1).
double room_depth_at(double ray_x, double ray_y, const SyntheticParams& p) {
  double z = p.room_depth;
  if (ray_x != 0.0) z = std::min(z, p.room_half_width / std::abs(ray_x));
  if (ray_y != 0.0) z = std::min(z, p.room_half_height / std::abs(ray_y));
  return z;
}

}  // namespace

SyntheticSample generate_synthetic(SceneKind kind, const SyntheticParams& params, std::uint64_t seed) {
  params.validate();
  const std::size_t w = params.width;
  const std::size_t h = params.height;
  CameraIntrinsics k;
  k.fx = k.fy = params.focal_scale * static_cast<double>(w);
  k.cx = (static_cast<double>(w) - 1.0) / 2.0;
  k.cy = (static_cast<double>(h) - 1.0) / 2.0;

  std::mt19937_64 rng(seed);
  std::vector<double> gt(w * h);
  for (std::size_t v = 0; v < h; ++v) {
    for (std::size_t u = 0; u < w; ++u) {
      double z = 0.0;
      switch (kind) {
        case SceneKind::plane:
          z = params.plane_depth;
          break;
        case SceneKind::two_layer:
          z = u < w / 2 ? params.near_depth : params.far_depth;
          break;
        case SceneKind::box_room:
        case SceneKind::noisy_gt:
          z = room_depth_at((static_cast<double>(u) - k.cx) / k.fx, (static_cast<double>(v) - k.cy) / k.fy, params);
          break;
      }
      gt[v * w + u] = z;
    }
  }
  if (kind == SceneKind::noisy_gt) {
    for (double& z : gt) {
      z += params.gt_sigma * standard_normal(rng);
      if (uniform_unit(rng) < params.gt_dropout) z = 0.0;
    }
  }
  DepthMap gt_map(w, h, gt);

  std::vector<double> pred(gt);
  const auto mask = gt_map.valid_mask();
  switch (params.prediction) {
    case PredictionKind::copy:
      break;
    case PredictionKind::noise:
      for (std::size_t i = 0; i < pred.size(); ++i) {
        const double n = params.pred_sigma * standard_normal(rng);
        if (mask[i]) pred[i] += n;
      }
      break;
    case PredictionKind::constant:
      if (params.constant_depth) {
        for (std::size_t i = 0; i < pred.size(); ++i) pred[i] = mask[i] ? *params.constant_depth : 0.0;
      } else {
        const DepthMap plane = median_plane(gt_map);
        pred.assign(plane.values().begin(), plane.values().end());
      }
      break;
    case PredictionKind::shift:
      for (std::size_t i = 0; i < pred.size(); ++i) {
        if (mask[i]) pred[i] += params.shift;
      }
      break;
  }
  return {std::move(gt_map), DepthMap(w, h, std::move(pred)), k};
}

SampleManifest write_synthetic_dataset(const std::filesystem::path& dir, SceneKind kind,
                                       const SyntheticParams& params, std::uint64_t seed, std::size_t count,
                                       DepthFileFormat format) {
  if (count == 0) throw InvalidArgument("write_synthetic_dataset: count must be positive");
  params.validate();
  std::filesystem::create_directories(dir);
  SampleManifest manifest;
  manifest.dataset_name = "synthetic_" + to_string(kind);
  const std::string ext = format == DepthFileFormat::pfm ? ".pfm" : ".png";
  for (std::size_t i = 0; i < count; ++i) {
    const auto sample = generate_synthetic(kind, params, seed + i);
    char id[32];
    std::snprintf(id, sizeof id, "%04zu", i);
    const auto gt_path = dir / ("gt_" + std::string(id) + ext);
    const auto pred_path = dir / ("pred_" + std::string(id) + ext);
    const auto k_path = dir / ("intrinsics_" + std::string(id) + ".txt");
    if (format == DepthFileFormat::pfm) {
      write_depth_pfm(gt_path, sample.gt);
      write_depth_pfm(pred_path, sample.pred);
    } else {
      write_depth_png16(gt_path, sample.gt, 1000);
      write_depth_png16(pred_path, sample.pred, 1000);
    }
    write_intrinsics(k_path, sample.intrinsics);
    manifest.entries.push_back({id, pred_path, gt_path, k_path});
  }
  write_manifest(dir / "manifest.json", manifest);
  return manifest;
}

}  // namespace depthbench

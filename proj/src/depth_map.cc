#include "depthbench/depth_map.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "depthbench/errors.h"
#include "depthbench/eval_config.h"

namespace depthbench {
namespace {

bool usable(double z) { return std::isfinite(z) && z > 0.0; }

}  // namespace

DepthMap::DepthMap(std::size_t width, std::size_t height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (values_.size() != width_ * height_) {
    throw InvalidArgument("DepthMap: expected " + std::to_string(width_ * height_) +
                          " values, got " + std::to_string(values_.size()));
  }
  valid_.resize(values_.size());
  std::transform(values_.begin(), values_.end(), valid_.begin(),
                 [](double z) { return static_cast<std::uint8_t>(usable(z)); });
}

DepthMap::DepthMap(std::size_t width, std::size_t height, std::vector<double> values,
                   std::vector<std::uint8_t> valid)
    : width_(width), height_(height), values_(std::move(values)), valid_(std::move(valid)) {
  if (values_.size() != width_ * height_ || valid_.size() != values_.size()) {
    throw InvalidArgument("DepthMap: size mismatch between dimensions, values and mask");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (valid_[i] && !usable(values_[i])) {
      throw InvalidArgument("DepthMap: pixel " + std::to_string(i) +
                            " marked valid but holds a non-positive or non-finite depth");
    }
    valid_[i] = valid_[i] ? 1 : 0;
  }
}

DepthMap DepthMap::constant(std::size_t width, std::size_t height, double value) {
  return DepthMap(width, height, std::vector<double>(width * height, value));
}

std::size_t DepthMap::valid_count() const {
  return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), std::uint8_t{1}));
}

DepthMap apply_validity(const DepthMap& depth, const EvalConfig& config) {
  std::vector<double> values(depth.values().begin(), depth.values().end());
  std::vector<std::uint8_t> valid(depth.valid_mask().begin(), depth.valid_mask().end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double z = values[i];
    if (!std::isfinite(z) || !(z > config.min_depth_m) || z > config.max_depth_m) valid[i] = 0;
  }
  return DepthMap(depth.width(), depth.height(), std::move(values), std::move(valid));
}

DepthMap resample_nearest(const DepthMap& depth, std::size_t width, std::size_t height) {
  if (width == depth.width() && height == depth.height()) return depth;
  if (depth.empty() || width == 0 || height == 0) {
    throw InvalidArgument("resample_nearest: empty source or target resolution");
  }
  std::vector<double> values(width * height);
  std::vector<std::uint8_t> valid(width * height);
  for (std::size_t v = 0; v < height; ++v) {
    const std::size_t sv = std::min(depth.height() - 1, (2 * v + 1) * depth.height() / (2 * height));
    for (std::size_t u = 0; u < width; ++u) {
      const std::size_t su = std::min(depth.width() - 1, (2 * u + 1) * depth.width() / (2 * width));
      values[v * width + u] = depth.at(su, sv);
      valid[v * width + u] = depth.valid(su, sv) ? 1 : 0;
    }
  }
  return DepthMap(width, height, std::move(values), std::move(valid));
}

}  // namespace depthbench

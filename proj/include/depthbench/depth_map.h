#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace depthbench {

struct EvalConfig;

/// Dense row-major grid of metric depth (meters) with a per-pixel validity
/// mask. Immutable after construction.
///
/// Valid pixels always hold a finite, strictly positive depth. The value
/// stored under an invalid pixel is unspecified and never read by metrics.
class DepthMap {
 public:
  DepthMap() = default;

  /// Validity is derived from the values: finite and > 0.
  DepthMap(std::size_t width, std::size_t height, std::vector<double> values);

  /// Explicit mask. Throws InvalidArgument if a pixel marked valid is not
  /// finite and positive, or if sizes disagree.
  DepthMap(std::size_t width, std::size_t height, std::vector<double> values,
           std::vector<std::uint8_t> valid);

  /// Every pixel set to `value` (validity derived as above).
  static DepthMap constant(std::size_t width, std::size_t height, double value);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double at(std::size_t u, std::size_t v) const { return values_[v * width_ + u]; }
  bool valid(std::size_t u, std::size_t v) const { return valid_[v * width_ + u] != 0; }

  std::span<const double> values() const { return values_; }
  std::span<const std::uint8_t> valid_mask() const { return valid_; }

  std::size_t valid_count() const;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> values_;
  std::vector<std::uint8_t> valid_;
};

/// Marks non-finite pixels and pixels outside (min_depth_m, max_depth_m]
/// invalid. Everything else is preserved.
DepthMap apply_validity(const DepthMap& depth, const EvalConfig& config);

/// Nearest-neighbour resampling to a new resolution. Each target pixel center
/// maps to the source pixel containing it; validity travels with the value.
DepthMap resample_nearest(const DepthMap& depth, std::size_t width, std::size_t height);

}  // namespace depthbench

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace depthbench {

/// Every knob that influences a metric value. Reports echo it in full.
struct EvalConfig {
  double fscore_threshold_m = 0.01;
  double min_depth_m = 0.001;
  double max_depth_m = 10.0;
  std::vector<double> delta_thresholds = {1.25, 1.25 * 1.25, 1.25 * 1.25 * 1.25};
  std::size_t emd_sample_count = 2048;
  std::uint64_t rng_seed = 0;
  bool chamfer_normalized = true;
  int png_depth_scale = 1000;

  /// Throws InvalidArgument on the first violated invariant.
  void validate() const;
};

nlohmann::ordered_json to_json(const EvalConfig& config);

/// Overlays the keys present in `j` onto `base`. Unknown keys are rejected so
/// that a typo never silently falls back to a default.
EvalConfig config_from_json(const nlohmann::json& j, EvalConfig base = {});

/// 64-bit FNV-1a over the canonical JSON form, as 16 hex digits.
std::string config_digest(const EvalConfig& config);

}  // namespace depthbench

#include "depthbench/eval_config.h"

#include <cmath>
#include <cstdio>
#include <set>

#include "depthbench/errors.h"

namespace depthbench {

void EvalConfig::validate() const {
  if (!(std::isfinite(min_depth_m) && std::isfinite(max_depth_m) && min_depth_m > 0.0 &&
        min_depth_m < max_depth_m)) {
    throw InvalidArgument("config: require 0 < min_depth_m < max_depth_m");
  }
  if (!(std::isfinite(fscore_threshold_m) && fscore_threshold_m > 0.0)) {
    throw InvalidArgument("config: fscore_threshold_m must be positive");
  }
  if (emd_sample_count < 2) throw InvalidArgument("config: emd_sample_count must be >= 2");
  if (delta_thresholds.empty()) throw InvalidArgument("config: delta_thresholds is empty");
  double previous = 1.0;
  for (double d : delta_thresholds) {
    if (!(std::isfinite(d) && d > previous)) {
      throw InvalidArgument("config: delta_thresholds must be > 1 and strictly increasing");
    }
    previous = d;
  }
  if (png_depth_scale <= 0) throw InvalidArgument("config: png_depth_scale must be positive");
}

nlohmann::ordered_json to_json(const EvalConfig& config) {
  nlohmann::ordered_json j;
  j["fscore_threshold_m"] = config.fscore_threshold_m;
  j["min_depth_m"] = config.min_depth_m;
  j["max_depth_m"] = config.max_depth_m;
  j["delta_thresholds"] = config.delta_thresholds;
  j["emd_sample_count"] = config.emd_sample_count;
  j["rng_seed"] = config.rng_seed;
  j["chamfer_normalized"] = config.chamfer_normalized;
  j["png_depth_scale"] = config.png_depth_scale;
  return j;
}

EvalConfig config_from_json(const nlohmann::json& j, EvalConfig base) {
  if (!j.is_object()) throw InvalidArgument("config: expected a JSON object");
  static const std::set<std::string> known = {
      "fscore_threshold_m", "min_depth_m",   "max_depth_m",        "delta_thresholds",
      "emd_sample_count",   "rng_seed",      "chamfer_normalized", "png_depth_scale"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw InvalidArgument("config: unknown key '" + key + "'");
  }
  try {
    if (j.contains("fscore_threshold_m")) base.fscore_threshold_m = j.at("fscore_threshold_m").get<double>();
    if (j.contains("min_depth_m")) base.min_depth_m = j.at("min_depth_m").get<double>();
    if (j.contains("max_depth_m")) base.max_depth_m = j.at("max_depth_m").get<double>();
    if (j.contains("delta_thresholds")) base.delta_thresholds = j.at("delta_thresholds").get<std::vector<double>>();
    if (j.contains("emd_sample_count")) base.emd_sample_count = j.at("emd_sample_count").get<std::size_t>();
    if (j.contains("rng_seed")) base.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    if (j.contains("chamfer_normalized")) base.chamfer_normalized = j.at("chamfer_normalized").get<bool>();
    if (j.contains("png_depth_scale")) base.png_depth_scale = j.at("png_depth_scale").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  return base;
}

std::string config_digest(const EvalConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace depthbench

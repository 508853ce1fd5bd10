#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace depthbench {

struct ManifestEntry {
  std::string sample_id;
  std::filesystem::path pred_path;  ///< empty when the manifest carries GT only
  std::filesystem::path gt_path;
  std::filesystem::path intrinsics_path;
};

/// Explicit prediction/ground-truth pairing. On disk:
///
///   {
///     "dataset_name": "rooms",
///     "png_depth_scale": 1000,          (optional)
///     "entries": [
///       {"sample_id": "0001", "pred_path": "pred/0001.png",
///        "gt_path": "gt/0001.png", "intrinsics_ref": "K.txt"}
///     ]
///   }
///
/// Relative paths resolve against the manifest's directory.
struct SampleManifest {
  std::string dataset_name;
  std::optional<int> png_depth_scale;
  std::vector<ManifestEntry> entries;
};

struct ManifestRequirements {
  bool require_predictions = true;
};

/// Parses and validates: unique non-empty ids, every referenced file exists.
/// Throws ManifestError naming the manifest and the offending entry.
SampleManifest load_manifest(const std::filesystem::path& path, const ManifestRequirements& req = {});

SampleManifest manifest_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                                  const ManifestRequirements& req = {});

/// Writes paths relative to the manifest's directory when possible.
void write_manifest(const std::filesystem::path& path, const SampleManifest& manifest);

}  // namespace depthbench

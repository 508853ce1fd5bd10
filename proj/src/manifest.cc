#include "depthbench/manifest.h"

#include <fstream>
#include <set>

#include "depthbench/errors.h"

namespace depthbench {
namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string string_field(const nlohmann::json& entry, const char* key, std::size_t index, bool required) {
  if (!entry.contains(key)) {
    if (!required) return {};
    throw ManifestError("manifest entry " + std::to_string(index) + ": missing '" + key + "'");
  }
  if (!entry.at(key).is_string()) {
    throw ManifestError("manifest entry " + std::to_string(index) + ": '" + key + "' must be a string");
  }
  return entry.at(key).get<std::string>();
}

void require_file(const fs::path& p, const std::string& id, const char* what) {
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) {
    throw ManifestError("sample '" + id + "': " + what + " '" + p.string() + "' does not exist");
  }
}

}  // namespace

SampleManifest manifest_from_json(const nlohmann::json& j, const fs::path& base_dir, const ManifestRequirements& req) {
  if (!j.is_object()) throw ManifestError("manifest: expected a JSON object");
  SampleManifest m;
  if (j.contains("dataset_name")) {
    if (!j.at("dataset_name").is_string()) throw ManifestError("manifest: 'dataset_name' must be a string");
    m.dataset_name = j.at("dataset_name").get<std::string>();
  }
  if (j.contains("png_depth_scale")) {
    if (!j.at("png_depth_scale").is_number_integer() || j.at("png_depth_scale").get<int>() <= 0) {
      throw ManifestError("manifest: 'png_depth_scale' must be a positive integer");
    }
    m.png_depth_scale = j.at("png_depth_scale").get<int>();
  }
  if (!j.contains("entries") || !j.at("entries").is_array()) {
    throw ManifestError("manifest: 'entries' must be an array");
  }
  if (j.at("entries").empty()) throw ManifestError("manifest: 'entries' is empty");

  std::set<std::string> seen;
  std::size_t index = 0;
  for (const auto& e : j.at("entries")) {
    if (!e.is_object()) throw ManifestError("manifest entry " + std::to_string(index) + ": expected an object");
    ManifestEntry entry;
    entry.sample_id = string_field(e, "sample_id", index, true);
    if (entry.sample_id.empty()) throw ManifestError("manifest entry " + std::to_string(index) + ": empty sample_id");
    if (!seen.insert(entry.sample_id).second) {
      throw ManifestError("manifest: duplicate sample_id '" + entry.sample_id + "'");
    }
    const std::string pred = string_field(e, "pred_path", index, req.require_predictions);
    if (!pred.empty()) entry.pred_path = resolve(base_dir, pred);
    entry.gt_path = resolve(base_dir, string_field(e, "gt_path", index, true));
    entry.intrinsics_path = resolve(base_dir, string_field(e, "intrinsics_ref", index, true));

    if (!entry.pred_path.empty()) require_file(entry.pred_path, entry.sample_id, "pred_path");
    require_file(entry.gt_path, entry.sample_id, "gt_path");
    require_file(entry.intrinsics_path, entry.sample_id, "intrinsics_ref");
    m.entries.push_back(std::move(entry));
    ++index;
  }
  return m;
}

SampleManifest load_manifest(const fs::path& path, const ManifestRequirements& req) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open manifest '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ManifestError("manifest '" + path.string() + "': " + e.what());
  }
  try {
    return manifest_from_json(j, path.parent_path(), req);
  } catch (const ManifestError& e) {
    throw ManifestError("manifest '" + path.string() + "': " + e.what());
  }
}

void write_manifest(const fs::path& path, const SampleManifest& manifest) {
  const fs::path base = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  auto rel = [&](const fs::path& p) {
    std::error_code ec;
    const auto r = fs::relative(p, base, ec);
    return (ec || r.empty()) ? p.string() : r.generic_string();
  };
  nlohmann::ordered_json j;
  j["dataset_name"] = manifest.dataset_name;
  if (manifest.png_depth_scale) j["png_depth_scale"] = *manifest.png_depth_scale;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : manifest.entries) {
    nlohmann::ordered_json row;
    row["sample_id"] = e.sample_id;
    if (!e.pred_path.empty()) row["pred_path"] = rel(e.pred_path);
    row["gt_path"] = rel(e.gt_path);
    row["intrinsics_ref"] = rel(e.intrinsics_path);
    j["entries"].push_back(std::move(row));
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace depthbench

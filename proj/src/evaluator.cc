#include "depthbench/evaluator.h"

#include <atomic>
#include <chrono>
#include <exception>
#include <thread>
#include <vector>

#include "depthbench/depth_io.h"
#include "depthbench/errors.h"

namespace depthbench {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int png_scale(const SampleManifest& m, const EvalConfig& config) {
  return m.png_depth_scale.value_or(config.png_depth_scale);
}

MetricRecord failed_record(const std::string& id, const std::string& reason) {
  MetricRecord r;
  r.sample_id = id;
  r.ok = false;
  r.failure_reason = reason;
  return r;
}

Report finish(std::string mode, const SampleManifest& manifest, const EvalConfig& config,
              std::vector<MetricRecord> records) {
  Report report;
  report.dataset_name = manifest.dataset_name;
  report.mode = std::move(mode);
  report.config = config;
  const std::string digest = config_digest(config);
  for (auto& r : records) r.config_digest = digest;
  report.records = std::move(records);
  report.aggregate = aggregate_records(report.records);
  return report;
}

// Runs `body` for every entry, turning exceptions into failed rows.
std::vector<MetricRecord> run_entries(const SampleManifest& manifest, std::size_t workers,
                                      const std::function<MetricRecord(const ManifestEntry&)>& body) {
  std::vector<MetricRecord> records(manifest.entries.size());
  parallel_for(records.size(), workers, [&](std::size_t i) {
    const auto& entry = manifest.entries[i];
    try {
      records[i] = body(entry);
      records[i].sample_id = entry.sample_id;
    } catch (const std::exception& e) {
      records[i] = failed_record(entry.sample_id, e.what());
    }
  });
  return records;
}

}  // namespace

PairResult evaluate_pair(const DepthMap& pred, const DepthMap& gt, const CameraIntrinsics& intrinsics,
                         const EvalConfig& config) {
  config.validate();
  intrinsics.validate_for(gt);
  PairResult out;

  auto start = Clock::now();
  const DepthMap gt_valid = apply_validity(gt, config);
  const DepthMap pred_valid = apply_validity(resample_nearest(pred, gt.width(), gt.height()), config);
  out.metrics_2d = metrics_2d(pred_valid, gt_valid, config);
  out.timing.metrics_2d_ms = ms_since(start);

  start = Clock::now();
  const PointCloud gt_cloud = backproject(gt_valid, intrinsics);
  const PointCloud pred_cloud = backproject(pred_valid, intrinsics);
  out.timing.backproject_ms = ms_since(start);

  start = Clock::now();
  out.metrics_3d = metrics_3d(pred_cloud, gt_cloud, config);
  out.timing.metrics_3d_ms = ms_since(start);
  return out;
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
}

Report evaluate_manifest(const SampleManifest& manifest, const EvalConfig& config, std::size_t workers) {
  config.validate();
  const int scale = png_scale(manifest, config);
  auto records = run_entries(manifest, workers, [&](const ManifestEntry& e) {
    if (e.pred_path.empty()) throw InvalidArgument("no pred_path for this sample");
    const auto start = Clock::now();
    const DepthMap pred = read_depth(e.pred_path, scale);
    const DepthMap gt = read_depth(e.gt_path, scale);
    const CameraIntrinsics k = read_intrinsics(e.intrinsics_path);
    const double load_ms = ms_since(start);
    const PairResult r = evaluate_pair(pred, gt, k, config);
    MetricRecord rec;
    rec.metrics_2d = r.metrics_2d;
    rec.metrics_3d = r.metrics_3d;
    rec.timing = r.timing;
    rec.timing.load_ms = load_ms;
    return rec;
  });
  return finish("eval", manifest, config, std::move(records));
}

Report run_median_plane(const SampleManifest& manifest, const EvalConfig& config, std::size_t workers) {
  config.validate();
  const int scale = png_scale(manifest, config);
  auto records = run_entries(manifest, workers, [&](const ManifestEntry& e) {
    const auto start = Clock::now();
    const DepthMap gt = apply_validity(read_depth(e.gt_path, scale), config);
    const CameraIntrinsics k = read_intrinsics(e.intrinsics_path);
    const double load_ms = ms_since(start);
    const PairResult r = evaluate_pair(median_plane(gt), gt, k, config);
    MetricRecord rec;
    rec.baseline = "median_plane";
    rec.metrics_2d = r.metrics_2d;
    rec.metrics_3d = r.metrics_3d;
    rec.timing = r.timing;
    rec.timing.load_ms = load_ms;
    return rec;
  });
  return finish("median_plane", manifest, config, std::move(records));
}

Report run_oracle_nn(const SampleManifest& val, const SampleManifest& train, const EvalConfig& config,
                     std::size_t workers, const RetrievalOptions& options) {
  config.validate();
  std::vector<DepthMap> candidates;
  candidates.reserve(train.entries.size());
  const int train_scale = png_scale(train, config);
  for (const auto& e : train.entries) {
    try {
      candidates.push_back(apply_validity(read_depth(e.gt_path, train_scale), config));
    } catch (const Error& err) {
      throw ManifestError("train sample '" + e.sample_id + "': " + err.what());
    }
  }

  const int scale = png_scale(val, config);
  auto records = run_entries(val, workers, [&](const ManifestEntry& e) {
    const auto start = Clock::now();
    const DepthMap query = apply_validity(read_depth(e.gt_path, scale), config);
    const CameraIntrinsics k = read_intrinsics(e.intrinsics_path);
    const double load_ms = ms_since(start);
    const RetrievalResult hit = oracle_nn(query, candidates, config, options);
    const PairResult r = evaluate_pair(candidates[hit.best_index], query, k, config);
    MetricRecord rec;
    rec.baseline = "oracle_nn";
    rec.metrics_2d = r.metrics_2d;
    rec.metrics_3d = r.metrics_3d;
    rec.retrieval = RetrievalColumns{train.entries[hit.best_index].sample_id, hit.best_absrel,
                                     hit.candidates_evaluated};
    rec.timing = r.timing;
    rec.timing.load_ms = load_ms;
    return rec;
  });
  return finish("oracle_nn", val, config, std::move(records));
}

int exit_code_for(const Report& report) { return report.aggregate.samples_failed == 0 ? 0 : 1; }

}  // namespace depthbench

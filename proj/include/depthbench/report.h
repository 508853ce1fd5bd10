#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "depthbench/eval_config.h"
#include "depthbench/metrics_2d.h"
#include "depthbench/metrics_3d.h"

namespace depthbench {

struct StageTimings {
  double load_ms = 0.0;
  double metrics_2d_ms = 0.0;
  double backproject_ms = 0.0;
  double metrics_3d_ms = 0.0;
};

struct RetrievalColumns {
  std::string best_train_id;
  double best_absrel = 0.0;
  std::size_t candidates_evaluated = 0;
};

/// One row of a report. Failed samples keep their id and a reason; their
/// metric fields are meaningless.
struct MetricRecord {
  std::string sample_id;
  bool ok = true;
  std::string failure_reason;
  std::string baseline;  ///< empty for plain evaluation
  Metrics2D metrics_2d;
  Metrics3D metrics_3d;
  std::optional<RetrievalColumns> retrieval;
  StageTimings timing;
  std::string config_digest;
};

struct ReportAggregate {
  std::size_t samples_ok = 0;
  std::size_t samples_failed = 0;
  std::optional<Metrics2D> metrics_2d;         ///< per-sample mean (headline)
  std::optional<Metrics2D> metrics_2d_pooled;  ///< every pixel weighted equally
  std::optional<Metrics3D> metrics_3d;
};

struct Report {
  std::string dataset_name;
  std::string mode;  ///< "eval", "median_plane" or "oracle_nn"
  EvalConfig config;
  std::vector<MetricRecord> records;
  ReportAggregate aggregate;
  /// Wall-clock timings vary run to run; they are left out unless asked for
  /// so that reports stay byte-identical.
  bool include_timing = false;
};

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(const std::string& name);

/// Aggregates the successful records of `records`.
ReportAggregate aggregate_records(const std::vector<MetricRecord>& records);

/// Numbers carry 9 significant digits and fields appear in a fixed order.
///
/// JSON: {dataset_name, mode, config, config_digest, samples[], aggregate}.
/// CSV: a header row, one row per sample, and a final AGGREGATE row.
std::string render_report(const Report& report, ReportFormat format);

/// Throws DegenerateInput for a report without records and IoError when the
/// path cannot be written.
void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format);

}  // namespace depthbench

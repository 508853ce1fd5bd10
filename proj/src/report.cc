#include "depthbench/report.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "depthbench/errors.h"

namespace depthbench {
namespace {

using ojson = nlohmann::ordered_json;

// Rounds to 9 significant digits; the JSON serializer then prints the
// shortest representation, which is at most those 9 digits.
double round9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

ojson metrics_2d_json(const Metrics2D& m) {
  ojson j;
  j["absrel"] = round9(m.absrel);
  j["sqrel"] = round9(m.sqrel);
  j["rmse"] = round9(m.rmse);
  j["rmse_log"] = round9(m.rmse_log);
  j["delta_acc"] = ojson::array();
  for (double d : m.delta_acc) j["delta_acc"].push_back(round9(d));
  j["valid_pixel_count"] = m.valid_pixel_count;
  return j;
}

ojson metrics_3d_json(const Metrics3D& m) {
  ojson j;
  j["chamfer"] = round9(m.chamfer);
  j["emd"] = round9(m.emd);
  j["completeness"] = round9(m.completeness);
  j["precision"] = round9(m.precision);
  j["recall"] = round9(m.recall);
  j["fscore"] = round9(m.fscore);
  j["iou"] = round9(m.iou);
  j["threshold_m"] = round9(m.threshold_m);
  return j;
}

ojson config_json(const EvalConfig& c) {
  ojson j = to_json(c);
  j["fscore_threshold_m"] = round9(c.fscore_threshold_m);
  j["min_depth_m"] = round9(c.min_depth_m);
  j["max_depth_m"] = round9(c.max_depth_m);
  ojson deltas = ojson::array();
  for (double d : c.delta_thresholds) deltas.push_back(round9(d));
  j["delta_thresholds"] = deltas;
  return j;
}

std::string render_json(const Report& report) {
  ojson j;
  j["dataset_name"] = report.dataset_name;
  j["mode"] = report.mode;
  j["config"] = config_json(report.config);
  j["config_digest"] = config_digest(report.config);
  j["samples"] = ojson::array();
  for (const auto& r : report.records) {
    ojson s;
    s["sample_id"] = r.sample_id;
    s["status"] = r.ok ? "ok" : "failed";
    if (!r.baseline.empty()) s["baseline"] = r.baseline;
    if (!r.ok) {
      s["reason"] = r.failure_reason;
      j["samples"].push_back(std::move(s));
      continue;
    }
    s["metrics_2d"] = metrics_2d_json(r.metrics_2d);
    s["metrics_3d"] = metrics_3d_json(r.metrics_3d);
    if (r.retrieval) {
      ojson rt;
      rt["best_train_id"] = r.retrieval->best_train_id;
      rt["best_absrel"] = round9(r.retrieval->best_absrel);
      rt["candidates_evaluated"] = r.retrieval->candidates_evaluated;
      s["retrieval"] = std::move(rt);
    }
    if (report.include_timing) {
      s["timing_ms"] = ojson{{"load", round9(r.timing.load_ms)},
                             {"metrics_2d", round9(r.timing.metrics_2d_ms)},
                             {"backproject", round9(r.timing.backproject_ms)},
                             {"metrics_3d", round9(r.timing.metrics_3d_ms)}};
    }
    j["samples"].push_back(std::move(s));
  }
  const auto& a = report.aggregate;
  ojson agg;
  agg["samples_ok"] = a.samples_ok;
  agg["samples_failed"] = a.samples_failed;
  agg["metrics_2d"] = a.metrics_2d ? metrics_2d_json(*a.metrics_2d) : ojson(nullptr);
  agg["metrics_2d_pooled"] = a.metrics_2d_pooled ? metrics_2d_json(*a.metrics_2d_pooled) : ojson(nullptr);
  agg["metrics_3d"] = a.metrics_3d ? metrics_3d_json(*a.metrics_3d) : ojson(nullptr);
  j["aggregate"] = std::move(agg);
  return j.dump(2) + "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const Report& report) {
  const std::size_t deltas = report.config.delta_thresholds.size();
  const bool retrieval = report.mode == "oracle_nn";
  const std::string digest = config_digest(report.config);

  std::vector<std::string> header = {"sample_id", "status", "baseline", "absrel", "sqrel", "rmse", "rmse_log"};
  for (std::size_t k = 0; k < deltas; ++k) header.push_back("delta_" + std::to_string(k + 1));
  for (const char* name : {"valid_pixel_count", "chamfer", "emd", "completeness", "precision", "recall", "fscore",
                           "iou", "threshold_m"}) {
    header.emplace_back(name);
  }
  if (retrieval) {
    for (const char* name : {"best_train_id", "best_absrel", "candidates_evaluated"}) header.emplace_back(name);
  }
  if (report.include_timing) {
    for (const char* name : {"load_ms", "metrics_2d_ms", "backproject_ms", "metrics_3d_ms"}) header.emplace_back(name);
  }
  header.emplace_back("config_digest");
  header.emplace_back("reason");

  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  };
  auto metric_cells = [&](std::vector<std::string>& row, const Metrics2D* m2, const Metrics3D* m3) {
    for (double v : {m2->absrel, m2->sqrel, m2->rmse, m2->rmse_log}) row.push_back(fmt9(v));
    for (std::size_t k = 0; k < deltas; ++k) row.push_back(k < m2->delta_acc.size() ? fmt9(m2->delta_acc[k]) : "");
    row.push_back(std::to_string(m2->valid_pixel_count));
    for (double v : {m3->chamfer, m3->emd, m3->completeness, m3->precision, m3->recall, m3->fscore, m3->iou,
                     m3->threshold_m}) {
      row.push_back(fmt9(v));
    }
  };
  const std::size_t metric_columns = 4 + deltas + 1 + 8;

  emit(header);
  for (const auto& r : report.records) {
    std::vector<std::string> row = {r.sample_id, r.ok ? "ok" : "failed", r.baseline};
    if (r.ok) {
      metric_cells(row, &r.metrics_2d, &r.metrics_3d);
    } else {
      row.insert(row.end(), metric_columns, "");
    }
    if (retrieval) {
      if (r.ok && r.retrieval) {
        row.push_back(r.retrieval->best_train_id);
        row.push_back(fmt9(r.retrieval->best_absrel));
        row.push_back(std::to_string(r.retrieval->candidates_evaluated));
      } else {
        row.insert(row.end(), 3, "");
      }
    }
    if (report.include_timing) {
      for (double v : {r.timing.load_ms, r.timing.metrics_2d_ms, r.timing.backproject_ms, r.timing.metrics_3d_ms}) {
        row.push_back(r.ok ? fmt9(v) : "");
      }
    }
    row.push_back(digest);
    row.push_back(r.ok ? "" : r.failure_reason);
    emit(row);
  }

  const auto& a = report.aggregate;
  std::vector<std::string> row = {"AGGREGATE", a.samples_failed ? "partial" : "ok",
                                  report.mode == "eval" ? "" : report.mode};
  if (a.metrics_2d && a.metrics_3d) {
    metric_cells(row, &*a.metrics_2d, &*a.metrics_3d);
  } else {
    row.insert(row.end(), metric_columns, "");
  }
  if (retrieval) row.insert(row.end(), 3, "");
  if (report.include_timing) row.insert(row.end(), 4, "");
  row.push_back(digest);
  row.push_back(std::to_string(a.samples_ok) + " ok / " + std::to_string(a.samples_failed) + " failed");
  emit(row);
  return out.str();
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw InvalidArgument("unknown report format '" + name + "' (expected json or csv)");
}

ReportAggregate aggregate_records(const std::vector<MetricRecord>& records) {
  ReportAggregate a;
  std::vector<Metrics2D> m2;
  std::vector<Metrics3D> m3;
  for (const auto& r : records) {
    if (!r.ok) {
      ++a.samples_failed;
      continue;
    }
    ++a.samples_ok;
    m2.push_back(r.metrics_2d);
    m3.push_back(r.metrics_3d);
  }
  if (!m2.empty()) {
    a.metrics_2d = aggregate_2d(m2);
    a.metrics_2d_pooled = aggregate_2d_pooled(m2);
    a.metrics_3d = aggregate_3d(m3);
  }
  return a;
}

std::string render_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::json ? render_json(report) : render_csv(report);
}

void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format) {
  if (report.records.empty()) throw DegenerateInput("write_report: no records");
  const std::string text = render_report(report, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace depthbench

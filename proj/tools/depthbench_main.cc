// depthbench: batch 2D/3D evaluation of depth predictions.
//
//   depthbench eval --manifest M [--config C] --out R [--format json|csv] [--workers N]
//   depthbench baseline median-plane --manifest M --out R ...
//   depthbench baseline oracle-nn --val-manifest V --train-manifest T --out R ...
//   depthbench synth --kind two_layer --seed S --out DIR
//
// Exit codes: 0 success, 1 some samples failed, 2 invalid invocation/manifest.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "depthbench/depth_io.h"
#include "depthbench/errors.h"
#include "depthbench/evaluator.h"
#include "depthbench/manifest.h"
#include "depthbench/report.h"
#include "depthbench/synthetic.h"

namespace fs = std::filesystem;
using namespace depthbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;

struct ConfigFlags {
  std::string config_path;
  std::optional<double> threshold;
  std::optional<double> min_depth;
  std::optional<double> max_depth;
  std::optional<std::size_t> emd_samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> png_scale;
  std::vector<double> deltas;
  bool raw_chamfer = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON file with EvalConfig fields")->check(CLI::ExistingFile);
    app->add_option("--threshold", threshold, "F-score distance threshold in meters");
    app->add_option("--min-depth", min_depth, "Lower validity bound in meters (exclusive)");
    app->add_option("--max-depth", max_depth, "Upper validity bound in meters (inclusive)");
    app->add_option("--emd-samples", emd_samples, "Points per cloud for EMD and completeness");
    app->add_option("--seed", seed, "Sampling seed");
    app->add_option("--png-scale", png_scale, "Stored PNG value per meter");
    app->add_option("--deltas", deltas, "Delta-accuracy cutoffs, increasing");
    app->add_flag("--raw-chamfer", raw_chamfer, "Report the raw-sum Chamfer distance");
  }

  EvalConfig resolve() const {
    EvalConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("config '" + config_path + "': " + e.what());
      }
      config = config_from_json(j);
    }
    if (threshold) config.fscore_threshold_m = *threshold;
    if (min_depth) config.min_depth_m = *min_depth;
    if (max_depth) config.max_depth_m = *max_depth;
    if (emd_samples) config.emd_sample_count = *emd_samples;
    if (seed) config.rng_seed = *seed;
    if (png_scale) config.png_depth_scale = *png_scale;
    if (!deltas.empty()) config.delta_thresholds = deltas;
    if (raw_chamfer) config.chamfer_normalized = false;
    config.validate();
    return config;
  }
};

struct OutputFlags {
  std::string out;
  std::string format;
  std::size_t workers = 1;
  bool timing = false;

  void attach(CLI::App* app) {
    app->add_option("--out", out, "Report path")->required();
    app->add_option("--format", format, "json or csv (default: from the --out extension)");
    app->add_option("--workers", workers, "Parallel samples")->check(CLI::PositiveNumber);
    app->add_flag("--timing", timing, "Include per-stage wall-clock timings (breaks byte-identical reports)");
  }

  ReportFormat resolve_format() const {
    if (!format.empty()) return parse_report_format(format);
    const std::string ext = fs::path(out).extension().string();
    if (ext == ".csv") return ReportFormat::csv;
    if (ext == ".json") return ReportFormat::json;
    throw InvalidArgument("cannot infer the report format from '" + out + "'; pass --format json|csv");
  }

  void check_writable() const {
    const fs::path dir = fs::path(out).parent_path();
    if (!dir.empty() && !fs::is_directory(dir)) {
      throw InvalidArgument("output directory '" + dir.string() + "' does not exist");
    }
  }
};

int finish(Report report, const OutputFlags& output, ReportFormat format) {
  report.include_timing = output.timing;
  write_report(report, output.out, format);
  const int code = exit_code_for(report);
  std::cerr << report.mode << ": " << report.aggregate.samples_ok << " ok, " << report.aggregate.samples_failed
            << " failed -> " << output.out << '\n';
  return code;
}

struct SynthFlags {
  std::string kind = "two_layer";
  std::uint64_t seed = 0;
  std::string out;
  std::size_t count = 1;
  std::string prediction = "copy";
  std::string file_format = "pfm";
  SyntheticParams params;
  std::optional<double> constant;

  void attach(CLI::App* app) {
    app->add_option("--kind", kind, "plane | two_layer | box_room | noisy_gt");
    app->add_option("--seed", seed, "Generator seed; sample i uses seed + i");
    app->add_option("--out", out, "Output directory")->required();
    app->add_option("--count", count, "Number of samples")->check(CLI::PositiveNumber);
    app->add_option("--pred", prediction, "copy | noise | constant | shift");
    app->add_option("--file-format", file_format, "pfm (lossless) or png (16-bit, millimeters)");
    app->add_option("--width", params.width);
    app->add_option("--height", params.height);
    app->add_option("--focal-scale", params.focal_scale, "fx = fy = focal_scale * width");
    app->add_option("--sigma", params.pred_sigma, "Prediction noise (meters)");
    app->add_option("--shift", params.shift, "Prediction offset (meters)");
    app->add_option("--plane-depth", params.plane_depth);
    app->add_option("--near", params.near_depth);
    app->add_option("--far", params.far_depth);
    app->add_option("--gt-sigma", params.gt_sigma, "noisy_gt: ground-truth noise (meters)");
    app->add_option("--gt-dropout", params.gt_dropout, "noisy_gt: fraction of invalid ground-truth pixels");
    app->add_option("--constant", constant, "Depth for --pred constant (default: GT lower median)");
  }

  int run() {
    const SceneKind scene = parse_scene_kind(kind);
    params.prediction = parse_prediction_kind(prediction);
    params.constant_depth = constant;
    if (file_format != "pfm" && file_format != "png") throw InvalidArgument("--file-format must be pfm or png");
    params.validate();

    const fs::path dir(out);
    write_synthetic_dataset(dir, scene, params, seed, count,
                            file_format == "pfm" ? DepthFileFormat::pfm : DepthFileFormat::png16);
    std::cerr << "synth: wrote " << count << " " << kind << " samples to " << (dir / "manifest.json").string()
              << '\n';
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"depthbench: 2D and 3D evaluation of monocular depth predictions"};
  app.require_subcommand(1);

  ConfigFlags eval_config;
  OutputFlags eval_output;
  std::string eval_manifest;
  auto* eval = app.add_subcommand("eval", "Evaluate predictions listed in a manifest");
  eval->add_option("--manifest", eval_manifest, "Manifest JSON")->required();
  eval_config.attach(eval);
  eval_output.attach(eval);

  auto* baseline = app.add_subcommand("baseline", "Diagnostic baselines");
  baseline->require_subcommand(1);

  ConfigFlags median_config;
  OutputFlags median_output;
  std::string median_manifest;
  auto* median = baseline->add_subcommand("median-plane", "Constant prediction at the GT median");
  median->add_option("--manifest", median_manifest, "Manifest JSON (pred_path optional)")->required();
  median_config.attach(median);
  median_output.attach(median);

  ConfigFlags oracle_config;
  OutputFlags oracle_output;
  std::string val_manifest;
  std::string train_manifest;
  bool fast_scan = false;
  auto* oracle = baseline->add_subcommand("oracle-nn", "Retrieve the train depth map with the lowest absrel");
  oracle->add_option("--val-manifest", val_manifest, "Queries (gt_path used)")->required();
  oracle->add_option("--train-manifest", train_manifest, "Candidates (gt_path used)")->required();
  oracle->add_flag("--fast-scan", fast_scan, "Rank candidates on 4x downsampled maps");
  oracle_config.attach(oracle);
  oracle_output.attach(oracle);

  SynthFlags synth_flags;
  auto* synth = app.add_subcommand("synth", "Write a synthetic dataset and its manifest");
  synth_flags.attach(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  const ManifestRequirements gt_only{.require_predictions = false};
  // Everything that can be validated up front is, so no report is written
  // for an invocation that could never succeed.
  try {
    if (*eval) {
      const EvalConfig config = eval_config.resolve();
      const ReportFormat format = eval_output.resolve_format();
      eval_output.check_writable();
      const auto manifest = load_manifest(eval_manifest);
      return finish(evaluate_manifest(manifest, config, eval_output.workers), eval_output, format);
    }
    if (*median) {
      const EvalConfig config = median_config.resolve();
      const ReportFormat format = median_output.resolve_format();
      median_output.check_writable();
      const auto manifest = load_manifest(median_manifest, gt_only);
      return finish(run_median_plane(manifest, config, median_output.workers), median_output, format);
    }
    if (*oracle) {
      const EvalConfig config = oracle_config.resolve();
      const ReportFormat format = oracle_output.resolve_format();
      oracle_output.check_writable();
      const auto val = load_manifest(val_manifest, gt_only);
      const auto train = load_manifest(train_manifest, gt_only);
      RetrievalOptions options;
      if (fast_scan) options.downsample_factor = 4;
      return finish(run_oracle_nn(val, train, config, oracle_output.workers, options), oracle_output, format);
    }
    if (*synth) return synth_flags.run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

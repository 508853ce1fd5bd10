#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>

#include "depthbench/camera.h"
#include "depthbench/errors.h"
#include "depthbench/eval_config.h"
#include "depthbench/evaluator.h"
#include "depthbench/metrics_2d.h"
#include "depthbench/metrics_3d.h"

namespace py = pybind11;
using namespace depthbench;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Config mappings go through the same JSON reader as config files, so
// unknown keys and bad values fail exactly as they do on the command line.
EvalConfig config_from(const py::object& mapping) {
  if (mapping.is_none()) return EvalConfig{};
  if (!py::isinstance<py::dict>(mapping)) throw py::type_error("config must be a dict or None");
  const std::string text = py::module_::import("json").attr("dumps")(mapping).cast<std::string>();
  EvalConfig c = config_from_json(nlohmann::json::parse(text), EvalConfig{});
  c.validate();
  return c;
}

DepthMap depth_from(const Array& a, const char* name) {
  if (a.ndim() != 2) {
    throw py::value_error(std::string(name) + ": expected a 2D depth array, got " + std::to_string(a.ndim()) +
                          " dimensions");
  }
  const auto h = static_cast<std::size_t>(a.shape(0)), w = static_cast<std::size_t>(a.shape(1));
  return DepthMap(w, h, std::vector<double>(a.data(), a.data() + a.size()));
}

PointCloud cloud_from(const Array& a, const char* name) {
  if (a.ndim() != 2 || a.shape(1) != 3) throw py::value_error(std::string(name) + ": expected an (N, 3) array");
  PointCloud c;
  c.points.resize(static_cast<std::size_t>(a.shape(0)));
  const double* p = a.data();
  for (auto& q : c.points) q = {p[0], p[1], p[2]}, p += 3;
  return c;
}

CameraIntrinsics intrinsics_from(const std::tuple<double, double, double, double>& k) {
  return {std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k)};
}

py::dict to_dict(const Metrics2D& m) {
  py::dict d;
  d["absrel"] = m.absrel;
  d["sqrel"] = m.sqrel;
  d["rmse"] = m.rmse;
  d["rmse_log"] = m.rmse_log;
  d["delta_acc"] = m.delta_acc;
  d["valid_pixel_count"] = m.valid_pixel_count;
  return d;
}

py::dict to_dict(const Metrics3D& m) {
  py::dict d;
  d["chamfer"] = m.chamfer;
  d["emd"] = m.emd;
  d["completeness"] = m.completeness;
  d["precision"] = m.precision;
  d["recall"] = m.recall;
  d["fscore"] = m.fscore;
  d["iou"] = m.iou;
  d["threshold_m"] = m.threshold_m;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Depth-prediction metrics: 2D suite, point-cloud suite and the combined per-sample pipeline.";
  m.attr("__version__") = DEPTHBENCH_VERSION;

  // Translators are tried newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DegenerateInput>(m, "DegenerateInput", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.def(
      "metrics_2d",
      [](const Array& pred, const Array& gt, const py::object& config) {
        const EvalConfig c = config_from(config);
        const DepthMap p = depth_from(pred, "pred"), g = depth_from(gt, "gt");
        Metrics2D out;
        {
          py::gil_scoped_release release;
          out = metrics_2d(p, g, c);
        }
        return to_dict(out);
      },
      py::arg("pred"), py::arg("gt"), py::arg("config") = py::none(),
      "absrel, sqrel, rmse, rmse_log and delta accuracies over jointly valid pixels (finite and > 0).");

  m.def(
      "backproject",
      [](const Array& depth, const std::tuple<double, double, double, double>& k) {
        const DepthMap d = depth_from(depth, "depth");
        PointCloud cloud;
        {
          py::gil_scoped_release release;
          cloud = backproject(d, intrinsics_from(k));
        }
        Array out({static_cast<py::ssize_t>(cloud.points.size()), py::ssize_t{3}});
        auto v = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < cloud.points.size(); ++i) {
          v(i, 0) = cloud.points[i].x;
          v(i, 1) = cloud.points[i].y;
          v(i, 2) = cloud.points[i].z;
        }
        return out;
      },
      py::arg("depth"), py::arg("intrinsics"),
      "(N, 3) camera-frame points for the valid pixels, row-major. intrinsics = (fx, fy, cx, cy).");

  m.def(
      "chamfer",
      [](const Array& g, const Array& r, bool normalized) {
        const PointCloud a = cloud_from(g, "g"), b = cloud_from(r, "r");
        py::gil_scoped_release release;
        return chamfer(a, b, normalized);
      },
      py::arg("g"), py::arg("r"), py::arg("normalized") = true);

  m.def(
      "emd_approx",
      [](const Array& g, const Array& r, std::uint64_t seed, const py::object& config) {
        const EvalConfig c = config_from(config);
        const PointCloud a = cloud_from(g, "g"), b = cloud_from(r, "r");
        py::gil_scoped_release release;
        return emd_approx(a, b, seed, c);
      },
      py::arg("g"), py::arg("r"), py::arg("seed") = 0, py::arg("config") = py::none(),
      "Mean per-point matching cost on emd_sample_count sampled points; never below the optimum.");

  m.def(
      "fscore_suite",
      [](const Array& g, const Array& r, double t) {
        const PointCloud a = cloud_from(g, "g"), b = cloud_from(r, "r");
        FScore s;
        {
          py::gil_scoped_release release;
          s = fscore_suite(a, b, t);
        }
        py::dict d;
        d["precision"] = s.precision;
        d["recall"] = s.recall;
        d["fscore"] = s.fscore;
        d["iou"] = s.iou;
        return d;
      },
      py::arg("g"), py::arg("r"), py::arg("threshold") = 0.01);

  m.def(
      "metrics_3d",
      [](const Array& pred, const Array& gt, const py::object& config) {
        const EvalConfig c = config_from(config);
        const PointCloud p = cloud_from(pred, "pred"), g = cloud_from(gt, "gt");
        Metrics3D out;
        {
          py::gil_scoped_release release;
          out = metrics_3d(p, g, c);
        }
        return to_dict(out);
      },
      py::arg("pred"), py::arg("gt"), py::arg("config") = py::none());

  m.def(
      "evaluate_pair",
      [](const Array& pred, const Array& gt, const std::tuple<double, double, double, double>& k,
         const py::object& config) {
        const EvalConfig c = config_from(config);
        const DepthMap p = depth_from(pred, "pred"), g = depth_from(gt, "gt");
        if (p.width() != g.width() || p.height() != g.height()) {
          throw py::value_error("pred and gt must have the same shape");
        }
        PairResult r;
        {
          py::gil_scoped_release release;
          r = evaluate_pair(p, g, intrinsics_from(k), c);
        }
        py::dict d = to_dict(r.metrics_2d);
        for (auto item : to_dict(r.metrics_3d)) d[item.first] = item.second;
        return d;
      },
      py::arg("pred"), py::arg("gt"), py::arg("intrinsics"), py::arg("config") = py::none(),
      "Full per-sample pipeline as run by the command-line tool; returns every 2D and 3D metric.");
}

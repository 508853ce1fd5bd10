#include "depthbench/metrics_2d.h"

#include <algorithm>
#include <cmath>

#include "depthbench/errors.h"
#include "depthbench/summation.h"

namespace depthbench {

Metrics2D metrics_2d(const DepthMap& pred, const DepthMap& gt, const EvalConfig& config) {
  if (pred.width() != gt.width() || pred.height() != gt.height()) {
    throw InvalidArgument("metrics_2d: prediction and ground truth differ in size");
  }
  const auto& cutoffs = config.delta_thresholds;
  CompensatedSum abs_rel, sq_rel, sq, sq_log;
  std::vector<std::size_t> below(cutoffs.size(), 0);
  std::size_t n = 0;

  const auto y = pred.values();
  const auto y_star = gt.values();
  const auto pred_ok = pred.valid_mask();
  const auto gt_ok = gt.valid_mask();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!pred_ok[i] || !gt_ok[i]) continue;
    const double p = y[i];
    const double g = y_star[i];
    const double diff = p - g;
    abs_rel.add(std::abs(diff) / g);
    sq_rel.add(diff * diff / g);
    sq.add(diff * diff);
    const double log_diff = std::log(p) - std::log(g);
    sq_log.add(log_diff * log_diff);
    const double ratio = std::max(p / g, g / p);
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
      if (ratio < cutoffs[k]) ++below[k];
    }
    ++n;
  }
  if (n == 0) throw DegenerateInput("metrics_2d: no jointly valid pixels");

  const auto count = static_cast<double>(n);
  Metrics2D m;
  m.absrel = abs_rel.value() / count;
  m.sqrel = sq_rel.value() / count;
  m.rmse = std::sqrt(sq.value() / count);
  m.rmse_log = std::sqrt(sq_log.value() / count);
  m.delta_acc.reserve(cutoffs.size());
  for (std::size_t k : below) m.delta_acc.push_back(static_cast<double>(k) / count);
  m.valid_pixel_count = n;
  return m;
}

namespace {

void check_aggregatable(std::span<const Metrics2D> records) {
  if (records.empty()) throw DegenerateInput("aggregate_2d: no records");
  for (const auto& r : records) {
    if (r.delta_acc.size() != records.front().delta_acc.size()) {
      throw DegenerateInput("aggregate_2d: records disagree on the number of delta cutoffs");
    }
  }
}

}  // namespace

Metrics2D aggregate_2d(std::span<const Metrics2D> records) {
  check_aggregatable(records);
  const std::size_t k = records.front().delta_acc.size();
  const auto n = static_cast<double>(records.size());
  auto mean_of = [&](auto field) {
    std::vector<double> v;
    v.reserve(records.size());
    for (const auto& r : records) v.push_back(field(r));
    return order_free_sum(std::move(v)) / n;
  };
  Metrics2D out;
  out.absrel = mean_of([](const Metrics2D& r) { return r.absrel; });
  out.sqrel = mean_of([](const Metrics2D& r) { return r.sqrel; });
  out.rmse = mean_of([](const Metrics2D& r) { return r.rmse; });
  out.rmse_log = mean_of([](const Metrics2D& r) { return r.rmse_log; });
  for (std::size_t i = 0; i < k; ++i) {
    out.delta_acc.push_back(mean_of([i](const Metrics2D& r) { return r.delta_acc[i]; }));
  }
  for (const auto& r : records) out.valid_pixel_count += r.valid_pixel_count;
  return out;
}

Metrics2D aggregate_2d_pooled(std::span<const Metrics2D> records) {
  check_aggregatable(records);
  const std::size_t k = records.front().delta_acc.size();
  Metrics2D out;
  for (const auto& r : records) out.valid_pixel_count += r.valid_pixel_count;
  if (out.valid_pixel_count == 0) throw DegenerateInput("aggregate_2d_pooled: no pixels");
  const auto n = static_cast<double>(out.valid_pixel_count);
  // Per-sample means times pixel counts recover the per-sample sums.
  auto pooled = [&](auto field) {
    std::vector<double> v;
    v.reserve(records.size());
    for (const auto& r : records) v.push_back(field(r) * static_cast<double>(r.valid_pixel_count));
    return order_free_sum(std::move(v)) / n;
  };
  out.absrel = pooled([](const Metrics2D& r) { return r.absrel; });
  out.sqrel = pooled([](const Metrics2D& r) { return r.sqrel; });
  out.rmse = std::sqrt(pooled([](const Metrics2D& r) { return r.rmse * r.rmse; }));
  out.rmse_log = std::sqrt(pooled([](const Metrics2D& r) { return r.rmse_log * r.rmse_log; }));
  for (std::size_t i = 0; i < k; ++i) {
    out.delta_acc.push_back(pooled([i](const Metrics2D& r) { return r.delta_acc[i]; }));
  }
  return out;
}

}  // namespace depthbench

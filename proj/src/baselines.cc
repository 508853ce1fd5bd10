#include "depthbench/baselines.h"

#include <algorithm>
#include <limits>
#include <vector>

#include "depthbench/errors.h"
#include "depthbench/metrics_2d.h"

namespace depthbench {

DepthMap median_plane(const DepthMap& gt) {
  std::vector<double> valid_values;
  valid_values.reserve(gt.size());
  const auto values = gt.values();
  const auto mask = gt.valid_mask();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (mask[i]) valid_values.push_back(values[i]);
  }
  if (valid_values.empty()) throw DegenerateInput("median_plane: ground truth has no valid pixels");

  const auto lower_median = valid_values.begin() + static_cast<std::ptrdiff_t>((valid_values.size() - 1) / 2);
  std::nth_element(valid_values.begin(), lower_median, valid_values.end());
  const double median = *lower_median;

  std::vector<double> plane(gt.size());
  for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = mask[i] ? median : 0.0;
  return DepthMap(gt.width(), gt.height(), std::move(plane),
                  std::vector<std::uint8_t>(mask.begin(), mask.end()));
}

namespace {

DepthMap downsample(const DepthMap& m, std::size_t factor) {
  return resample_nearest(m, std::max<std::size_t>(1, m.width() / factor),
                          std::max<std::size_t>(1, m.height() / factor));
}

}  // namespace

RetrievalResult oracle_nn(const DepthMap& query, std::span<const DepthMap> train_set, const EvalConfig& config,
                          const RetrievalOptions& options) {
  if (train_set.empty()) throw DegenerateInput("oracle_nn: empty candidate set");
  const std::size_t factor = std::max<std::size_t>(1, options.downsample_factor);
  const DepthMap scan_query = factor > 1 ? downsample(query, factor) : query;

  RetrievalResult best;
  double best_score = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t i = 0; i < train_set.size(); ++i) {
    DepthMap candidate = resample_nearest(train_set[i], query.width(), query.height());
    if (factor > 1) candidate = downsample(candidate, factor);
    double score;
    try {
      score = metrics_2d(candidate, scan_query, config).absrel;
    } catch (const DegenerateInput&) {
      continue;
    }
    ++best.candidates_evaluated;
    if (score < best_score) {
      best_score = score;
      best.best_index = i;
      found = true;
    }
  }
  if (!found) throw DegenerateInput("oracle_nn: no candidate shares a valid pixel with the query");

  best.best_absrel = factor > 1 ? metrics_2d(resample_nearest(train_set[best.best_index], query.width(),
                                                              query.height()),
                                             query, config)
                                      .absrel
                                : best_score;
  return best;
}

}  // namespace depthbench

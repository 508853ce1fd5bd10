#include "depthbench/sampling.h"

#include <cmath>
#include <numbers>
#include <numeric>

#include "depthbench/errors.h"

namespace depthbench {

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
  double u1;
  do {
    u1 = uniform_unit(rng);
  } while (u1 <= 0.0);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

PointCloud subsample(const PointCloud& cloud, std::size_t n, std::uint64_t seed) {
  if (cloud.empty()) throw DegenerateInput("subsample: empty point cloud");
  std::mt19937_64 rng(seed);
  const bool with_pixels = cloud.pixel_index.size() == cloud.size();
  PointCloud out;
  out.points.reserve(n);
  if (with_pixels) out.pixel_index.reserve(n);

  auto take = [&](std::size_t i) {
    out.points.push_back(cloud.points[i]);
    if (with_pixels) out.pixel_index.push_back(cloud.pixel_index[i]);
  };

  if (cloud.size() >= n) {
    // Partial Fisher-Yates: the first n slots become a uniform n-subset.
    std::vector<std::size_t> order(cloud.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = i + uniform_index(rng, order.size() - i);
      std::swap(order[i], order[j]);
      take(order[i]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) take(uniform_index(rng, cloud.size()));
  }
  return out;
}

}  // namespace depthbench

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "depthbench/point_cloud.h"

namespace depthbench {

/// Uniform integer in [0, bound) by rejection on the raw engine output. Used
/// instead of std::uniform_int_distribution, whose output differs between
/// standard library implementations.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound);

/// Uniform double in [0, 1) from the top 53 bits.
double uniform_unit(std::mt19937_64& rng);

/// Standard normal via Box-Muller on uniform_unit.
double standard_normal(std::mt19937_64& rng);

/// Exactly `n` points: without replacement when the cloud has at least `n`
/// points, with replacement otherwise. Throws DegenerateInput on an empty cloud.
PointCloud subsample(const PointCloud& cloud, std::size_t n, std::uint64_t seed);

}  // namespace depthbench

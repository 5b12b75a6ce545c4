#pragma once

#include <cstdint>
#include <vector>

namespace gq {

/// `count` points drawn uniformly from [-radius, radius]^dim with a seeded
/// mt19937_64; the same seed always yields the same points.
std::vector<std::vector<double>> sample_points(int dim, int count, std::uint64_t seed, double radius = 2.0);

}  // namespace gq

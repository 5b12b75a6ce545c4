#include "gq/sampling.hpp"

#include <random>

namespace gq {

std::vector<std::vector<double>> sample_points(int dim, int count, std::uint64_t seed, double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-radius, radius);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(count), std::vector<double>(static_cast<std::size_t>(dim)));
  for (auto& p : pts) {
    for (double& v : p) v = dist(rng);
  }
  return pts;
}

}  // namespace gq

#pragma once

// Seeded Monte Carlo sampling used as a falsification oracle: every sampled
// behaviour must fall inside the computed over-approximations.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "nnreach/closed_loop.hpp"
#include "nnreach/geometry.hpp"
#include "nnreach/network.hpp"

namespace nnreach {

using Point = std::vector<double>;
// States x(t0), ..., x(tf).
using Trajectory = std::vector<Point>;

struct SampleConfig {
  std::size_t count = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Independent generator for sample `index`, derived from (seed, index) only.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index);

// Uniform double in [0, 1) from 53 random bits.
double unit_uniform(std::mt19937_64& rng);

Point sample_box(const HyperBox& box, std::mt19937_64& rng);

// Picks a box with probability proportional to volume (uniformly when every box is
// degenerate), then a uniform point in it.
Point sample_union(const BoxUnion& u, std::mt19937_64& rng);

std::vector<Point> sample_inputs(const BoxUnion& h, const SampleConfig& cfg);

std::vector<Point> sample_network_outputs(const NetworkModel& net, const BoxUnion& h,
                                          const SampleConfig& cfg);

// x0 uniform in the initial set, a fresh v(t) drawn every step.
std::vector<Trajectory> simulate_trajectories(const Scenario& s, const SampleConfig& cfg);

}  // namespace nnreach

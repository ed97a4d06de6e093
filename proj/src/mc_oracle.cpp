#include "nnreach/mc_oracle.hpp"

#include <algorithm>

#include "nnreach/error.hpp"
#include "parallel.hpp"

namespace nnreach {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void check_config(const SampleConfig& cfg) {
  if (cfg.count < 1) throw ArgumentError("sample count must be at least 1");
}

}  // namespace

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32)};
  return std::mt19937_64(seq);
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Point sample_box(const HyperBox& box, std::mt19937_64& rng) {
  Point x(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i)
    x[i] = std::min(box[i].lo() + unit_uniform(rng) * box[i].width(), box[i].hi());
  return x;
}

Point sample_union(const BoxUnion& u, std::mt19937_64& rng) {
  if (u.empty()) throw EmptySetError("cannot sample the empty set");
  if (u.size() == 1) return sample_box(u[0], rng);
  const double total = u.volume_sum();
  std::size_t pick = u.size() - 1;
  if (total > 0.0) {
    double r = unit_uniform(rng) * total;
    for (std::size_t i = 0; i < u.size(); ++i) {
      r -= u[i].volume();
      if (r < 0.0) {
        pick = i;
        break;
      }
    }
  } else {
    pick = std::min<std::size_t>(static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(u.size())),
                                 u.size() - 1);
  }
  return sample_box(u[pick], rng);
}

std::vector<Point> sample_inputs(const BoxUnion& h, const SampleConfig& cfg) {
  check_config(cfg);
  std::vector<Point> out(cfg.count);
  detail::parallel_for(cfg.count, cfg.threads, [&](std::size_t i) {
    auto rng = sample_stream(cfg.seed, i);
    out[i] = sample_union(h, rng);
  });
  return out;
}

std::vector<Point> sample_network_outputs(const NetworkModel& net, const BoxUnion& h,
                                          const SampleConfig& cfg) {
  if (h.dim() != net.input_dim()) throw ArgumentError("input set dimension does not match the network");
  std::vector<Point> out = sample_inputs(h, cfg);
  detail::parallel_for(out.size(), cfg.threads, [&](std::size_t i) { out[i] = eval_network(net, out[i]); });
  return out;
}

std::vector<Trajectory> simulate_trajectories(const Scenario& s, const SampleConfig& cfg) {
  s.validate();
  check_config(cfg);
  std::vector<Trajectory> out(cfg.count);
  detail::parallel_for(cfg.count, cfg.threads, [&](std::size_t i) {
    auto rng = sample_stream(cfg.seed, i);
    Trajectory traj;
    traj.reserve(s.horizon + 1);
    traj.push_back(sample_box(s.initial_set, rng));
    for (std::size_t t = 0; t < s.horizon; ++t) {
      const Point& x = traj.back();
      Point eta = plant_output(s.plant, x);
      if (s.disturbance_set) {
        const Point v = sample_box(*s.disturbance_set, rng);
        eta.insert(eta.end(), v.begin(), v.end());
      }
      const Point u = eval_network(s.controller, eta);
      traj.push_back(step_plant(s.plant, x, u).next_state);
    }
    out[i] = std::move(traj);
  });
  return out;
}

}  // namespace nnreach

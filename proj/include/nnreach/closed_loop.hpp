#pragma once

// Reach tubes for plants in feedback with a neural-network controller
// u(t) = controller(y(t), v(t)), and safety verification against unsafe boxes.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "nnreach/geometry.hpp"
#include "nnreach/network.hpp"
#include "nnreach/plant.hpp"

namespace nnreach {

struct Scenario {
  PlantModel plant;
  NetworkModel controller;
  HyperBox initial_set;
  // Exogenous controller input v(t), fixed for every step. Absent when the
  // controller only sees y(t).
  std::optional<HyperBox> disturbance_set;
  std::size_t horizon = 0;
  // Over the controller input [y; v].
  PartitionSpec partition;

  // Throws ArgumentError when dimensions disagree.
  void validate() const;
};

struct ReachStep {
  std::size_t t = 0;
  HyperBox state;
  HyperBox output;
  // Controller reach set and its hull; empty / absent at the final step.
  BoxUnion controller;
  std::optional<HyperBox> control_hull;
  double wall_seconds = 0.0;
};

struct ReachTube {
  std::vector<ReachStep> steps;

  // Hull of all state boxes over the horizon.
  HyperBox state_hull() const;
};

ReachTube reach_nncs(const Scenario& s, const ReachOptions& options = {});

struct SafetySpec {
  // Unsafe region as a union of state-space boxes; may be empty.
  BoxUnion unsafe;
};

enum class Verdict { safe, uncertain };

std::string_view to_string(Verdict v);

struct Witness {
  std::size_t t;
  HyperBox state;
  std::size_t unsafe_index;
  HyperBox unsafe;
};

struct Verification {
  Verdict verdict = Verdict::uncertain;
  std::vector<Witness> witnesses;
  ReachTube tube;
};

// SAFE iff no state box meets any unsafe box; otherwise UNCERTAIN with every
// intersecting (step, unsafe box) pair.
Verification check_tube(ReachTube tube, const SafetySpec& spec);

Verification verify_nncs(const Scenario& s, const SafetySpec& spec, const ReachOptions& options = {});

}  // namespace nnreach

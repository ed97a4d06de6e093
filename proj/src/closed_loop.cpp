#include "nnreach/closed_loop.hpp"

#include <chrono>
#include <string>

#include "nnreach/error.hpp"

namespace nnreach {

void Scenario::validate() const {
  const std::size_t nx = state_dim(plant);
  const std::size_t ny = output_dim(plant);
  const std::size_t nv = disturbance_set ? disturbance_set->dim() : 0;
  if (initial_set.dim() != nx)
    throw ArgumentError("initial set has dimension " + std::to_string(initial_set.dim()) +
                        " but the plant has " + std::to_string(nx) + " states");
  if (controller.input_dim() != ny + nv)
    throw ArgumentError("controller expects " + std::to_string(controller.input_dim()) +
                        " inputs but plant output plus disturbance give " + std::to_string(ny + nv));
  if (controller.output_dim() != input_dim(plant))
    throw ArgumentError("controller produces " + std::to_string(controller.output_dim()) +
                        " outputs but the plant takes " + std::to_string(input_dim(plant)) + " inputs");
  if (partition.dim() != ny + nv)
    throw ArgumentError("partition has " + std::to_string(partition.dim()) +
                        " counts but the controller input has " + std::to_string(ny + nv) + " dimensions");
}

HyperBox ReachTube::state_hull() const {
  if (steps.empty()) throw EmptySetError("reach tube has no steps");
  BoxUnion all(steps.front().state.dim());
  for (const auto& s : steps) all.push_back(s.state);
  return interval_hull(all);
}

ReachTube reach_nncs(const Scenario& s, const ReachOptions& options) {
  s.validate();
  using clock = std::chrono::steady_clock;

  ReachTube tube;
  tube.steps.reserve(s.horizon + 1);
  HyperBox state = s.initial_set;
  for (std::size_t t = 0;; ++t) {
    const auto start = clock::now();
    HyperBox output = reach_ode_y(s.plant, state);
    if (t == s.horizon) {
      tube.steps.push_back(ReachStep{t, state, std::move(output), BoxUnion(s.controller.output_dim()),
                                     std::nullopt,
                                     std::chrono::duration<double>(clock::now() - start).count()});
      break;
    }
    const HyperBox controller_input =
        s.disturbance_set ? cartesian_product(output, *s.disturbance_set) : output;
    BoxUnion controller = reach_mlp(s.controller, BoxUnion(controller_input), s.partition, options);
    HyperBox control_hull = interval_hull(controller);
    HyperBox next = reach_ode_x(s.plant, control_hull, state).inflated(options.epsilon);
    tube.steps.push_back(ReachStep{t, std::move(state), std::move(output), std::move(controller),
                                   std::move(control_hull),
                                   std::chrono::duration<double>(clock::now() - start).count()});
    state = std::move(next);
  }
  return tube;
}

std::string_view to_string(Verdict v) { return v == Verdict::safe ? "SAFE" : "UNCERTAIN"; }

Verification check_tube(ReachTube tube, const SafetySpec& spec) {
  Verification result;
  for (const auto& step : tube.steps) {
    if (spec.unsafe.dim() != step.state.dim())
      throw ArgumentError("unsafe region has dimension " + std::to_string(spec.unsafe.dim()) +
                          " but the state has " + std::to_string(step.state.dim()));
    for (std::size_t k = 0; k < spec.unsafe.size(); ++k)
      if (boxes_intersect(step.state, spec.unsafe[k]))
        result.witnesses.push_back(Witness{step.t, step.state, k, spec.unsafe[k]});
  }
  result.verdict = result.witnesses.empty() ? Verdict::safe : Verdict::uncertain;
  result.tube = std::move(tube);
  return result;
}

Verification verify_nncs(const Scenario& s, const SafetySpec& spec, const ReachOptions& options) {
  if (spec.unsafe.dim() != state_dim(s.plant))
    throw ArgumentError("unsafe region dimension does not match the plant state");
  return check_tube(reach_nncs(s, options), spec);
}

}  // namespace nnreach

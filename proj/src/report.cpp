#include <json.hpp>

#include "nnreach/io.hpp"

namespace nnreach {

namespace {

using json = nlohmann::ordered_json;

json box_json(const HyperBox& b) { return json{{"lo", b.lower()}, {"hi", b.upper()}}; }

json header(std::string_view command) {
  return json{{"schema", kReportSchema}, {"tool", "nnreach"}, {"version", kVersion}, {"command", command}};
}

json execution(const RunInfo& run) {
  return json{{"threads", run.options.threads}, {"wall_seconds", run.wall_seconds}};
}

}  // namespace

std::string reach_nn_report(const NetworkModel& net, const HyperBox& input, const PartitionSpec& m,
                            const BoxUnion& result, const RunInfo& run) {
  json report = header("reach-nn");
  report["config"] = json{{"network", format_network(net)},
                          {"input_box", box_json(input)},
                          {"partition", m.counts()},
                          {"epsilon", run.options.epsilon}};
  json boxes = json::array();
  for (std::size_t i = 0; i < result.size(); ++i) {
    json b = box_json(result[i]);
    b["cell"] = result.source(i);
    boxes.push_back(std::move(b));
  }
  report["result"] = json{{"cell_count", result.size()},
                          {"hull", result.empty() ? json() : box_json(interval_hull(result))},
                          {"boxes", std::move(boxes)}};
  report["execution"] = execution(run);
  return report.dump(1) + "\n";
}

std::string tube_report(const ScenarioDocument& doc, const ReachTube& tube, const Verification* verification,
                        const RunInfo& run) {
  json report = header(verification ? "verify" : "reach-cls");
  report["config"] = json{{"scenario", format_scenario(doc)},
                          {"horizon", doc.scenario.horizon},
                          {"partition", doc.scenario.partition.counts()},
                          {"epsilon", run.options.epsilon}};
  report["coarsening"] = "controller reach set replaced by its interval hull before each plant step";

  json steps = json::array();
  for (const auto& s : tube.steps) {
    steps.push_back(json{{"t", s.t},
                         {"state", box_json(s.state)},
                         {"output", box_json(s.output)},
                         {"control_hull", s.control_hull ? box_json(*s.control_hull) : json()},
                         {"cells", s.controller.size()},
                         {"wall_seconds", s.wall_seconds}});
  }
  report["steps"] = std::move(steps);
  if (!tube.steps.empty()) report["state_hull"] = box_json(tube.state_hull());

  if (verification) {
    report["verdict"] = to_string(verification->verdict);
    json witnesses = json::array();
    for (const auto& w : verification->witnesses)
      witnesses.push_back(json{{"t", w.t}, {"unsafe_index", w.unsafe_index}, {"state", box_json(w.state)},
                               {"unsafe", box_json(w.unsafe)}});
    report["witnesses"] = std::move(witnesses);
  }
  report["execution"] = execution(run);
  return report.dump(1) + "\n";
}

}  // namespace nnreach

#pragma once

// Text formats: YAML network and scenario documents, JSON reports, CSV samples.
// Numbers are written in shortest round-trip decimal, so parse(format(x)) == x.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nnreach/closed_loop.hpp"
#include "nnreach/mc_oracle.hpp"
#include "nnreach/network.hpp"

namespace nnreach {

inline constexpr std::string_view kNetworkFormat = "nnreach-network/1";
inline constexpr std::string_view kScenarioFormat = "nnreach-scenario/1";
inline constexpr std::string_view kReportSchema = "nnreach-report/1";
inline constexpr std::string_view kVersion = "1.0.0";

std::string format_double(double value);

// --- networks ---------------------------------------------------------------

// Throws ParseError naming `source` and the offending line.
NetworkModel parse_network(std::string_view text, const std::string& source = "<network>");
NetworkModel load_network(const std::filesystem::path& path);
std::string format_network(const NetworkModel& net);

// --- scenarios --------------------------------------------------------------

struct ScenarioDocument {
  std::string name;
  Scenario scenario;
  SafetySpec safety;
  double epsilon = 0.0;
};

// A relative `controller:` path is resolved against base_dir.
ScenarioDocument parse_scenario(std::string_view text, const std::string& source = "<scenario>",
                                const std::filesystem::path& base_dir = {});
ScenarioDocument load_scenario(const std::filesystem::path& path);
// The controller is always written inline.
std::string format_scenario(const ScenarioDocument& doc);

enum class DocumentKind { network, scenario };
// Reads the `format:` tag of a YAML document.
DocumentKind detect_document(std::string_view text, const std::string& source);

// --- command-line values ----------------------------------------------------

// "lo:hi,lo:hi,..." (a bare number is a point interval).
HyperBox parse_box_arg(std::string_view text);
// "M1,M2,..."; a single value is repeated over `dim` dimensions when dim > 0.
PartitionSpec parse_partition_arg(std::string_view text, std::size_t dim = 0);

// --- reports ----------------------------------------------------------------

struct RunInfo {
  ReachOptions options;
  double wall_seconds = 0.0;
};

std::string reach_nn_report(const NetworkModel& net, const HyperBox& input, const PartitionSpec& m,
                            const BoxUnion& result, const RunInfo& run);

// `verification` is null for plain reach-tube reports.
std::string tube_report(const ScenarioDocument& doc, const ReachTube& tube,
                        const Verification* verification, const RunInfo& run);

// CSV with header y1..yn, one row per point.
std::string format_points(const std::vector<Point>& points, std::string_view prefix = "y");
// CSV with header sample,t,x1..xn.
std::string format_trajectories(const std::vector<Trajectory>& trajectories);

}  // namespace nnreach

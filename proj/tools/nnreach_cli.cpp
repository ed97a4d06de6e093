// nnreach command-line front end. Talks to the engine only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nnreach/nnreach.h"

namespace {

struct NetworkDeleter {
  void operator()(nnr_network* p) const { nnr_network_free(p); }
};
struct ScenarioDeleter {
  void operator()(nnr_scenario* p) const { nnr_scenario_free(p); }
};
struct ReportDeleter {
  void operator()(nnr_report* p) const { nnr_report_free(p); }
};
using NetworkPtr = std::unique_ptr<nnr_network, NetworkDeleter>;
using ScenarioPtr = std::unique_ptr<nnr_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<nnr_report, ReportDeleter>;

struct Box {
  std::vector<double> lo, hi;
};

constexpr std::size_t kMaxBoxDim = 4096;

// "lo:hi,lo:hi,..."; a bare number is a degenerate interval.
nnr_status parse_box(const std::string& text, Box& box) {
  box.lo.resize(kMaxBoxDim);
  box.hi.resize(kMaxBoxDim);
  std::size_t dim = 0;
  const nnr_status st = nnr_parse_box(text.c_str(), box.lo.data(), box.hi.data(), kMaxBoxDim, &dim);
  box.lo.resize(st == NNR_OK ? dim : 0);
  box.hi.resize(st == NNR_OK ? dim : 0);
  return st;
}

int fail(nnr_status status) {
  std::cerr << "nnreach: " << nnr_last_error() << "\n";
  return status;
}

int usage_error(const std::string& msg) {
  std::cerr << "nnreach: " << msg << "\n";
  return NNR_ERR_INPUT;
}

int emit(const nnr_report* report, const std::string& out) {
  if (out.empty() || out == "-") {
    std::fwrite(nnr_report_text(report), 1, nnr_report_size(report), stdout);
    return NNR_OK;
  }
  if (const nnr_status st = nnr_report_write(report, out.c_str()); st != NNR_OK) return fail(st);
  return NNR_OK;
}

struct Common {
  std::string file;
  std::string out;
  std::vector<std::size_t> partition;
  std::optional<std::size_t> horizon;
  std::optional<double> epsilon;
  unsigned threads = 0;
};

nnr_options options_from(const Common& c) {
  nnr_options o;
  nnr_default_options(&o);
  o.threads = c.threads;
  if (c.epsilon) o.epsilon = *c.epsilon;
  return o;
}

int load_scenario(const Common& c, ScenarioPtr& scenario) {
  nnr_scenario* raw = nullptr;
  if (const nnr_status st = nnr_scenario_load(c.file.c_str(), &raw); st != NNR_OK) return fail(st);
  scenario.reset(raw);
  if (c.horizon) nnr_scenario_set_horizon(scenario.get(), *c.horizon);
  if (!c.partition.empty()) {
    if (const nnr_status st = nnr_scenario_set_partition(scenario.get(), c.partition.data(), c.partition.size());
        st != NNR_OK)
      return fail(st);
  }
  return NNR_OK;
}

int run_reach_nn(const Common& c, const std::string& box_text) {
  if (c.partition.empty()) return usage_error("reach-nn needs --partition");
  Box box;
  if (const nnr_status st = parse_box(box_text, box); st != NNR_OK) return fail(st);
  nnr_network* raw = nullptr;
  if (const nnr_status st = nnr_network_load(c.file.c_str(), &raw); st != NNR_OK) return fail(st);
  NetworkPtr net(raw);
  const nnr_options opts = options_from(c);
  nnr_report* report = nullptr;
  const nnr_status st = nnr_reach_nn(net.get(), box.lo.data(), box.hi.data(), box.lo.size(), c.partition.data(),
                                     c.partition.size(), &opts, &report);
  if (st != NNR_OK) return fail(st);
  ReportPtr guard(report);
  return emit(report, c.out);
}

int run_tube(const Common& c, bool verify) {
  ScenarioPtr scenario;
  if (const int rc = load_scenario(c, scenario); rc != NNR_OK) return rc;
  const nnr_options opts = options_from(c);
  nnr_report* report = nullptr;
  const nnr_status st = verify ? nnr_verify(scenario.get(), &opts, &report) : nnr_reach_cls(scenario.get(), &opts, &report);
  if (st != NNR_OK && st != NNR_UNCERTAIN) return fail(st);
  ReportPtr guard(report);
  if (const int rc = emit(report, c.out); rc != NNR_OK) return rc;
  if (verify) std::cerr << (st == NNR_OK ? "SAFE" : "UNCERTAIN") << "\n";
  return st;
}

int run_sample(const Common& c, const std::string& box_text, std::size_t count, std::uint64_t seed) {
  nnr_document_kind kind{};
  if (const nnr_status st = nnr_detect_document(c.file.c_str(), &kind); st != NNR_OK) return fail(st);
  nnr_report* report = nullptr;
  nnr_status st = NNR_OK;
  if (kind == NNR_DOC_NETWORK) {
    if (box_text.empty()) return usage_error("sampling a network needs --box lo:hi,lo:hi,...");
    Box box;
    if (st = parse_box(box_text, box); st != NNR_OK) return fail(st);
    nnr_network* raw = nullptr;
    if (st = nnr_network_load(c.file.c_str(), &raw); st != NNR_OK) return fail(st);
    NetworkPtr net(raw);
    st = nnr_sample_network(net.get(), box.lo.data(), box.hi.data(), box.lo.size(), count, seed, c.threads,
                            &report);
  } else {
    ScenarioPtr scenario;
    if (const int rc = load_scenario(c, scenario); rc != NNR_OK) return rc;
    st = nnr_sample_scenario(scenario.get(), count, seed, c.threads, &report);
  }
  if (st != NNR_OK) return fail(st);
  ReportPtr guard(report);
  return emit(report, c.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sound reachability analysis for neural networks and neural-network control systems"};
  app.set_version_flag("--version", std::string(nnr_version()));
  app.require_subcommand(1);

  Common common;
  std::string box_text;
  std::size_t count = 1000;
  std::uint64_t seed = 0;

  const auto add_common = [&](CLI::App* sub, const char* file_help) {
    sub->add_option("file", common.file, file_help)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", common.out, "Output path (default: stdout)");
    sub->add_option("-j,--threads", common.threads, "Worker threads (0 = all cores)");
  };
  const auto add_partition = [&](CLI::App* sub) {
    sub->add_option("-p,--partition", common.partition, "Segments per controller/network input: M1,M2,...")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
  };

  auto* reach_nn = app.add_subcommand("reach-nn", "Over-approximate a network's output set over an input box");
  add_common(reach_nn, "Network file");
  add_partition(reach_nn);
  reach_nn->add_option("-b,--box", box_text, "Input box lo:hi,lo:hi,...")->required()->allow_extra_args(false);
  reach_nn->add_option("-e,--epsilon", common.epsilon, "Outward padding of result boxes")->check(CLI::NonNegativeNumber);

  const auto add_tube = [&](CLI::App* sub) {
    add_common(sub, "Scenario file");
    add_partition(sub);
    sub->add_option("-n,--horizon", common.horizon, "Override the scenario horizon");
    sub->add_option("-e,--epsilon", common.epsilon, "Override the scenario padding")->check(CLI::NonNegativeNumber);
  };
  auto* reach_cls = app.add_subcommand("reach-cls", "Compute the closed-loop reach tube of a scenario");
  add_tube(reach_cls);
  auto* verify = app.add_subcommand("verify", "Check the reach tube against the scenario's unsafe boxes");
  add_tube(verify);

  auto* sample = app.add_subcommand("sample", "Draw seeded Monte Carlo outputs or trajectories");
  add_common(sample, "Network or scenario file");
  sample->add_option("-c,--count", count, "Number of samples")->check(CLI::PositiveNumber);
  sample->add_option("-s,--seed", seed, "Random seed");
  sample->add_option("-b,--box", box_text, "Input box for networks: lo:hi,lo:hi,...");
  sample->add_option("-n,--horizon", common.horizon, "Override the scenario horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return NNR_ERR_INPUT;
  }

  if (*reach_nn) return run_reach_nn(common, box_text);
  if (*reach_cls) return run_tube(common, false);
  if (*verify) return run_tube(common, true);
  return run_sample(common, box_text, count, seed);
}

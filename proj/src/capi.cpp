#include "nnreach/nnreach.h"

#include <chrono>
#include <fstream>
#include <iterator>
#include <string>
#include <thread>

#include "nnreach/error.hpp"
#include "nnreach/io.hpp"

struct nnr_network {
  nnreach::NetworkModel model;
};

struct nnr_scenario {
  nnreach::ScenarioDocument doc;
};

struct nnr_report {
  std::string text;
  std::size_t items = 0;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
nnr_status guarded(Fn&& fn) noexcept {
  try {
    last_error.clear();
    return fn();
  } catch (const nnreach::InvariantError& e) {
    last_error = std::string("internal error: ") + e.what();
    return NNR_ERR_INTERNAL;
  } catch (const nnreach::ParseError& e) {
    last_error = e.what();
    return NNR_ERR_INPUT;
  } catch (const nnreach::EmptySetError& e) {
    last_error = e.what();
    return NNR_ERR_INPUT;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return NNR_ERR_INPUT;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return NNR_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal error: unknown exception";
    return NNR_ERR_INTERNAL;
  }
}

nnr_status invalid(const char* msg) {
  last_error = msg;
  return NNR_ERR_INPUT;
}

unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

nnreach::ReachOptions resolve(const nnr_options* options, double document_epsilon) {
  nnr_options o;
  nnr_default_options(&o);
  if (options) o = *options;
  return nnreach::ReachOptions{resolve_threads(o.threads), o.epsilon < 0.0 ? document_epsilon : o.epsilon};
}

nnreach::HyperBox box_from(const double* lo, const double* hi, std::size_t dim) {
  return nnreach::HyperBox::from_bounds(std::span<const double>(lo, dim), std::span<const double>(hi, dim));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

extern "C" {

const char* nnr_version(void) { return nnreach::kVersion.data(); }

const char* nnr_last_error(void) { return last_error.c_str(); }

void nnr_default_options(nnr_options* options) {
  if (!options) return;
  options->threads = 0;
  options->epsilon = -1.0;
}

nnr_status nnr_parse_box(const char* text, double* lo, double* hi, size_t capacity, size_t* dim) {
  if (!text || !lo || !hi || !dim) return invalid("null argument");
  return guarded([&] {
    const auto box = nnreach::parse_box_arg(text);
    *dim = box.dim();
    if (box.dim() > capacity) throw nnreach::ArgumentError("box has more dimensions than the buffer holds");
    for (std::size_t i = 0; i < box.dim(); ++i) {
      lo[i] = box[i].lo();
      hi[i] = box[i].hi();
    }
    return NNR_OK;
  });
}

nnr_status nnr_detect_document(const char* path, nnr_document_kind* out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nnreach::ParseError(path, 0, "cannot open file");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    *out = nnreach::detect_document(text, path) == nnreach::DocumentKind::network ? NNR_DOC_NETWORK
                                                                                   : NNR_DOC_SCENARIO;
    return NNR_OK;
  });
}

// --- networks ---------------------------------------------------------------

nnr_status nnr_network_load(const char* path, nnr_network** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    *out = new nnr_network{nnreach::load_network(path)};
    return NNR_OK;
  });
}

nnr_status nnr_network_parse(const char* text, nnr_network** out) {
  if (!text || !out) return invalid("null argument");
  return guarded([&] {
    *out = new nnr_network{nnreach::parse_network(text)};
    return NNR_OK;
  });
}

void nnr_network_free(nnr_network* net) { delete net; }

size_t nnr_network_input_dim(const nnr_network* net) { return net ? net->model.input_dim() : 0; }

size_t nnr_network_output_dim(const nnr_network* net) { return net ? net->model.output_dim() : 0; }

nnr_status nnr_network_eval(const nnr_network* net, const double* input, size_t n_input, double* output,
                            size_t n_output) {
  if (!net || !input || !output) return invalid("null argument");
  return guarded([&] {
    if (n_output != net->model.output_dim()) throw nnreach::ArgumentError("output buffer has the wrong length");
    const auto y = nnreach::eval_network(net->model, std::span<const double>(input, n_input));
    std::copy(y.begin(), y.end(), output);
    return NNR_OK;
  });
}

// --- scenarios --------------------------------------------------------------

nnr_status nnr_scenario_load(const char* path, nnr_scenario** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    *out = new nnr_scenario{nnreach::load_scenario(path)};
    return NNR_OK;
  });
}

nnr_status nnr_scenario_parse(const char* text, const char* base_dir, nnr_scenario** out) {
  if (!text || !out) return invalid("null argument");
  return guarded([&] {
    *out = new nnr_scenario{nnreach::parse_scenario(text, "<scenario>", base_dir ? base_dir : "")};
    return NNR_OK;
  });
}

void nnr_scenario_free(nnr_scenario* scenario) { delete scenario; }

size_t nnr_scenario_state_dim(const nnr_scenario* scenario) {
  return scenario ? nnreach::state_dim(scenario->doc.scenario.plant) : 0;
}

nnr_status nnr_scenario_set_horizon(nnr_scenario* scenario, size_t horizon) {
  if (!scenario) return invalid("null argument");
  scenario->doc.scenario.horizon = horizon;
  return NNR_OK;
}

nnr_status nnr_scenario_set_partition(nnr_scenario* scenario, const size_t* counts, size_t n) {
  if (!scenario || !counts || n == 0) return invalid("null or empty partition");
  return guarded([&] {
    auto& s = scenario->doc.scenario;
    std::vector<std::size_t> values(counts, counts + n);
    if (n == 1) values.assign(s.controller.input_dim(), counts[0]);
    nnreach::PartitionSpec spec(std::move(values));
    if (spec.dim() != s.controller.input_dim())
      throw nnreach::ArgumentError("partition needs " + std::to_string(s.controller.input_dim()) + " counts");
    s.partition = std::move(spec);
    return NNR_OK;
  });
}

// --- engine -----------------------------------------------------------------

nnr_status nnr_reach_nn(const nnr_network* net, const double* lo, const double* hi, size_t dim,
                        const size_t* counts, size_t n_counts, const nnr_options* options, nnr_report** out) {
  if (!net || !lo || !hi || !counts || !out) return invalid("null argument");
  return guarded([&] {
    const auto opts = resolve(options, 0.0);
    const auto input = box_from(lo, hi, dim);
    std::vector<std::size_t> values(counts, counts + n_counts);
    if (n_counts == 1 && dim > 1) values.assign(dim, counts[0]);
    const nnreach::PartitionSpec m(std::move(values));
    const auto start = std::chrono::steady_clock::now();
    const auto result = nnreach::reach_mlp(net->model, nnreach::BoxUnion(input), m, opts);
    const double wall = seconds_since(start);
    *out = new nnr_report{nnreach::reach_nn_report(net->model, input, m, result, {opts, wall}), result.size()};
    return NNR_OK;
  });
}

nnr_status nnr_reach_cls(const nnr_scenario* scenario, const nnr_options* options, nnr_report** out) {
  if (!scenario || !out) return invalid("null argument");
  return guarded([&] {
    auto doc = scenario->doc;
    const auto opts = resolve(options, doc.epsilon);
    doc.epsilon = opts.epsilon;
    const auto start = std::chrono::steady_clock::now();
    const auto tube = nnreach::reach_nncs(doc.scenario, opts);
    const double wall = seconds_since(start);
    *out = new nnr_report{nnreach::tube_report(doc, tube, nullptr, {opts, wall}), tube.steps.size()};
    return NNR_OK;
  });
}

nnr_status nnr_verify(const nnr_scenario* scenario, const nnr_options* options, nnr_report** out) {
  if (!scenario || !out) return invalid("null argument");
  return guarded([&] {
    auto doc = scenario->doc;
    const auto opts = resolve(options, doc.epsilon);
    doc.epsilon = opts.epsilon;
    const auto start = std::chrono::steady_clock::now();
    const auto result = nnreach::verify_nncs(doc.scenario, doc.safety, opts);
    const double wall = seconds_since(start);
    *out = new nnr_report{nnreach::tube_report(doc, result.tube, &result, {opts, wall}), result.tube.steps.size()};
    return result.verdict == nnreach::Verdict::safe ? NNR_OK : NNR_UNCERTAIN;
  });
}

nnr_status nnr_sample_network(const nnr_network* net, const double* lo, const double* hi, size_t dim, size_t count,
                              uint64_t seed, unsigned threads, nnr_report** out) {
  if (!net || !lo || !hi || !out) return invalid("null argument");
  return guarded([&] {
    const nnreach::SampleConfig cfg{count, seed, resolve_threads(threads)};
    const auto points = nnreach::sample_network_outputs(net->model, nnreach::BoxUnion(box_from(lo, hi, dim)), cfg);
    *out = new nnr_report{nnreach::format_points(points), points.size()};
    return NNR_OK;
  });
}

nnr_status nnr_sample_scenario(const nnr_scenario* scenario, size_t count, uint64_t seed, unsigned threads,
                               nnr_report** out) {
  if (!scenario || !out) return invalid("null argument");
  return guarded([&] {
    const nnreach::SampleConfig cfg{count, seed, resolve_threads(threads)};
    const auto trajectories = nnreach::simulate_trajectories(scenario->doc.scenario, cfg);
    std::size_t rows = 0;
    for (const auto& t : trajectories) rows += t.size();
    *out = new nnr_report{nnreach::format_trajectories(trajectories), rows};
    return NNR_OK;
  });
}

// --- reports ----------------------------------------------------------------

const char* nnr_report_text(const nnr_report* report) { return report ? report->text.c_str() : ""; }

size_t nnr_report_size(const nnr_report* report) { return report ? report->text.size() : 0; }

size_t nnr_report_item_count(const nnr_report* report) { return report ? report->items : 0; }

nnr_status nnr_report_write(const nnr_report* report, const char* path) {
  if (!report || !path) return invalid("null argument");
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    last_error = std::string("cannot open '") + path + "' for writing";
    return NNR_ERR_INPUT;
  }
  out.write(report->text.data(), static_cast<std::streamsize>(report->text.size()));
  if (!out) {
    last_error = std::string("failed writing '") + path + "'";
    return NNR_ERR_INPUT;
  }
  return NNR_OK;
}

void nnr_report_free(nnr_report* report) { delete report; }

}  // extern "C"

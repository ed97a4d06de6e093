#include "nnreach/io.hpp"

#include <yaml-cpp/yaml.h>

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "nnreach/error.hpp"

namespace nnreach {

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw InvariantError("failed to format a number");
  return std::string(buf.data(), end);
}

namespace {

// --- YAML reading -----------------------------------------------------------

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  const std::string& source() const { return source_; }

  [[noreturn]] void fail(const YAML::Node& at, const std::string& msg) const {
    const int line = at.IsDefined() && at.Mark().line >= 0 ? at.Mark().line + 1 : 0;
    throw ParseError(source_, line, msg);
  }

  YAML::Node load(std::string_view text) const {
    try {
      YAML::Node root = YAML::Load(std::string(text));
      if (!root.IsMap()) throw ParseError(source_, 1, "document must be a mapping");
      return root;
    } catch (const YAML::ParserException& e) {
      throw ParseError(source_, e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg);
    }
  }

  YAML::Node require(const YAML::Node& map, const char* key) const {
    YAML::Node n = map[key];
    if (!n.IsDefined() || n.IsNull()) fail(map, std::string("missing required key '") + key + "'");
    return n;
  }

  std::string text(const YAML::Node& n, const char* what) const {
    if (!n.IsScalar()) fail(n, std::string(what) + " must be a scalar");
    return n.Scalar();
  }

  double number(const YAML::Node& n, const char* what) const {
    if (!n.IsScalar()) fail(n, std::string(what) + " must be a number");
    std::string_view s = n.Scalar();
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(value))
      fail(n, std::string(what) + " is not a finite number: '" + n.Scalar() + "'");
    return value;
  }

  std::size_t count(const YAML::Node& n, const char* what) const {
    if (!n.IsScalar()) fail(n, std::string(what) + " must be a non-negative integer");
    std::size_t value = 0;
    const std::string& s = n.Scalar();
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || end != s.data() + s.size())
      fail(n, std::string(what) + " must be a non-negative integer, got '" + s + "'");
    return value;
  }

  std::vector<double> vector(const YAML::Node& n, const char* what) const {
    if (!n.IsSequence()) fail(n, std::string(what) + " must be a list of numbers");
    std::vector<double> out;
    out.reserve(n.size());
    for (const auto& item : n) out.push_back(number(item, what));
    return out;
  }

  Matrix matrix(const YAML::Node& n, const char* what, std::ptrdiff_t rows, std::ptrdiff_t cols) const {
    if (!n.IsSequence() || n.size() == 0) fail(n, std::string(what) + " must be a non-empty list of rows");
    if (rows >= 0 && static_cast<std::ptrdiff_t>(n.size()) != rows)
      fail(n, std::string(what) + " has " + std::to_string(n.size()) + " rows, expected " + std::to_string(rows));
    Matrix m;
    for (std::size_t i = 0; i < n.size(); ++i) {
      const YAML::Node row = n[i];
      const auto values = vector(row, what);
      if (i == 0) {
        if (cols < 0) cols = static_cast<std::ptrdiff_t>(values.size());
        m.resize(static_cast<Eigen::Index>(n.size()), cols);
      }
      if (static_cast<std::ptrdiff_t>(values.size()) != cols)
        fail(row, std::string(what) + " row " + std::to_string(i + 1) + " has " + std::to_string(values.size()) +
                      " entries, expected " + std::to_string(cols));
      for (std::size_t j = 0; j < values.size(); ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[j];
    }
    return m;
  }

  HyperBox box(const YAML::Node& n, const char* what) const {
    if (!n.IsMap()) fail(n, std::string(what) + " must be a mapping with lo/hi or center/radius");
    try {
      if (n["lo"] || n["hi"]) {
        const auto lo = vector(require(n, "lo"), what);
        const auto hi = vector(require(n, "hi"), what);
        if (lo.size() != hi.size()) fail(n, std::string(what) + ": lo and hi differ in length");
        return HyperBox::from_bounds(lo, hi);
      }
      const auto center = vector(require(n, "center"), what);
      const YAML::Node r = require(n, "radius");
      if (r.IsScalar()) return HyperBox::cube(center, number(r, what));
      const auto radius = vector(r, what);
      if (radius.size() != center.size()) fail(n, std::string(what) + ": center and radius differ in length");
      std::vector<Interval> dims;
      for (std::size_t i = 0; i < center.size(); ++i) {
        if (radius[i] < 0.0) fail(r, std::string(what) + ": radius must be non-negative");
        dims.emplace_back(center[i] - radius[i], center[i] + radius[i]);
      }
      return HyperBox(std::move(dims));
    } catch (const ArgumentError& e) {
      fail(n, std::string(what) + ": " + e.what());
    }
  }

 private:
  std::string source_;
};

void check_format(const Reader& r, const YAML::Node& root, std::string_view expected) {
  const YAML::Node f = root["format"];
  if (!f) return;
  if (r.text(f, "format") != expected)
    r.fail(f, "unsupported format '" + f.Scalar() + "', expected '" + std::string(expected) + "'");
}

NetworkModel read_network(const Reader& r, const YAML::Node& root) {
  check_format(r, root, kNetworkFormat);
  std::string name = root["name"] ? r.text(root["name"], "name") : std::string();
  const YAML::Node layers = r.require(root, "layers");
  if (!layers.IsSequence() || layers.size() == 0) r.fail(layers, "layers must be a non-empty list");

  std::vector<Layer> parsed;
  std::ptrdiff_t expected_inputs = root["input_dim"] ? static_cast<std::ptrdiff_t>(r.count(root["input_dim"], "input_dim")) : -1;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const YAML::Node node = layers[l];
    if (!node.IsMap()) r.fail(node, "layer " + std::to_string(l + 1) + " must be a mapping");
    const YAML::Node act = r.require(node, "activation");
    const auto kind = parse_activation(r.text(act, "activation"));
    if (!kind) r.fail(act, "unknown activation '" + act.Scalar() + "'");

    std::ptrdiff_t rows = node["outputs"] ? static_cast<std::ptrdiff_t>(r.count(node["outputs"], "outputs")) : -1;
    std::ptrdiff_t cols = node["inputs"] ? static_cast<std::ptrdiff_t>(r.count(node["inputs"], "inputs")) : -1;
    if (expected_inputs >= 0) {
      if (cols >= 0 && cols != expected_inputs)
        r.fail(node["inputs"], "layer " + std::to_string(l + 1) + " declares " + std::to_string(cols) +
                                   " inputs but the previous stage produces " + std::to_string(expected_inputs));
      cols = expected_inputs;
    }
    const YAML::Node weights_node = r.require(node, "weights");
    Matrix weights = r.matrix(weights_node, "weights", rows, cols);
    const YAML::Node bias_node = r.require(node, "bias");
    const auto bias = r.vector(bias_node, "bias");
    if (static_cast<Eigen::Index>(bias.size()) != weights.rows())
      r.fail(bias_node, "bias has " + std::to_string(bias.size()) + " entries but the layer has " +
                            std::to_string(weights.rows()) + " neurons");
    try {
      parsed.emplace_back(std::move(weights), Eigen::Map<const Vector>(bias.data(), static_cast<Eigen::Index>(bias.size())),
                          *kind);
    } catch (const ArgumentError& e) {
      r.fail(node, e.what());
    }
    expected_inputs = static_cast<std::ptrdiff_t>(parsed.back().output_dim());
  }
  if (root["output_dim"] && r.count(root["output_dim"], "output_dim") != parsed.back().output_dim())
    r.fail(root["output_dim"], "output_dim does not match the last layer");
  return NetworkModel(std::move(parsed), std::move(name));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- YAML writing -----------------------------------------------------------

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

template <typename Range>
std::string flow_list(const Range& values) {
  std::string out = "[";
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ", ";
    first = false;
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>)
      out += format_double(v);
    else
      out += std::to_string(v);
  }
  return out + "]";
}

std::string flow_row(const Matrix& m, Eigen::Index i) {
  return flow_list(std::span<const double>(m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())));
}

std::string flow_box(const HyperBox& b) {
  return "{lo: " + flow_list(b.lower()) + ", hi: " + flow_list(b.upper()) + "}";
}

void write_matrix(std::string& out, const std::string& indent, const char* key, const Matrix& m) {
  out += indent + key + ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) out += indent + "  - " + flow_row(m, i) + "\n";
}

void write_network(std::string& out, const NetworkModel& net, const std::string& indent) {
  out += indent + "name: " + quoted(net.name()) + "\n";
  out += indent + "input_dim: " + std::to_string(net.input_dim()) + "\n";
  out += indent + "output_dim: " + std::to_string(net.output_dim()) + "\n";
  out += indent + "layers:\n";
  for (const auto& layer : net.layers()) {
    out += indent + "  - activation: " + std::string(to_string(layer.activation())) + "\n";
    out += indent + "    inputs: " + std::to_string(layer.input_dim()) + "\n";
    out += indent + "    outputs: " + std::to_string(layer.output_dim()) + "\n";
    write_matrix(out, indent + "    ", "weights", layer.weights());
    out += indent + "    bias: " +
           flow_list(std::span<const double>(layer.bias().data(), static_cast<std::size_t>(layer.bias().size()))) +
           "\n";
  }
}


}  // namespace

NetworkModel parse_network(std::string_view text, const std::string& source) {
  const Reader r(source);
  return read_network(r, r.load(text));
}

NetworkModel load_network(const std::filesystem::path& path) {
  return parse_network(read_file(path), path.string());
}

std::string format_network(const NetworkModel& net) {
  std::string out = "format: " + std::string(kNetworkFormat) + "\n";
  write_network(out, net, "");
  return out;
}

// --- scenarios --------------------------------------------------------------

namespace {

PlantModel read_plant(const Reader& r, const YAML::Node& node) {
  if (!node.IsMap()) r.fail(node, "plant must be a mapping");
  const YAML::Node kind_node = r.require(node, "kind");
  const std::string kind = r.text(kind_node, "plant kind");
  if (kind == "linear") {
    Matrix a = r.matrix(r.require(node, "A"), "A", -1, -1);
    Matrix b = r.matrix(r.require(node, "B"), "B", a.rows(), -1);
    Matrix c = r.matrix(r.require(node, "C"), "C", -1, a.rows());
    try {
      return LinearPlant(std::move(a), std::move(b), std::move(c));
    } catch (const ArgumentError& e) {
      r.fail(node, e.what());
    }
  }
  std::map<std::string, double> params;
  if (const YAML::Node p = node["parameters"]) {
    if (!p.IsMap()) r.fail(p, "plant parameters must be a mapping");
    for (const auto& kv : p) params[kv.first.Scalar()] = r.number(kv.second, "plant parameter");
  }
  try {
    return make_named_plant(kind, params);
  } catch (const ArgumentError& e) {
    r.fail(kind_node, e.what());
  }
}

}  // namespace

ScenarioDocument parse_scenario(std::string_view text, const std::string& source,
                                const std::filesystem::path& base_dir) {
  const Reader r(source);
  const YAML::Node root = r.load(text);
  check_format(r, root, kScenarioFormat);

  std::string name = root["name"] ? r.text(root["name"], "name") : std::string();
  PlantModel plant = read_plant(r, r.require(root, "plant"));

  const YAML::Node ctrl = r.require(root, "controller");
  std::optional<NetworkModel> controller;
  if (ctrl.IsScalar()) {
    std::filesystem::path path = ctrl.Scalar();
    if (path.is_relative()) path = base_dir / path;
    try {
      controller = load_network(path);
    } catch (const ParseError& e) {
      if (e.line() == 0) r.fail(ctrl, std::string("controller: ") + e.what());
      throw;
    }
  } else {
    if (!ctrl.IsMap()) r.fail(ctrl, "controller must be a file path or an inline network");
    controller = read_network(r, ctrl);
  }

  HyperBox initial = r.box(r.require(root, "initial_set"), "initial_set");
  std::optional<HyperBox> disturbance;
  if (root["disturbance_set"] && !root["disturbance_set"].IsNull())
    disturbance = r.box(root["disturbance_set"], "disturbance_set");

  const std::size_t horizon = r.count(r.require(root, "horizon"), "horizon");

  const std::size_t eta_dim = output_dim(plant) + (disturbance ? disturbance->dim() : 0);
  const YAML::Node part = r.require(root, "partition");
  PartitionSpec partition;
  try {
    if (part.IsScalar()) {
      partition = PartitionSpec::uniform(eta_dim, r.count(part, "partition"));
    } else {
      if (!part.IsSequence()) r.fail(part, "partition must be a count or a list of counts");
      std::vector<std::size_t> counts;
      for (const auto& c : part) counts.push_back(r.count(c, "partition count"));
      partition = PartitionSpec(std::move(counts));
    }
  } catch (const ArgumentError& e) {
    r.fail(part, e.what());
  }

  BoxUnion unsafe(state_dim(plant));
  if (const YAML::Node u = root["unsafe"]; u && !u.IsNull()) {
    if (!u.IsSequence()) r.fail(u, "unsafe must be a list of boxes");
    for (const auto& b : u) {
      HyperBox box = r.box(b, "unsafe box");
      if (box.dim() != unsafe.dim()) r.fail(b, "unsafe box dimension does not match the plant state");
      unsafe.push_back(std::move(box));
    }
  }

  double epsilon = 0.0;
  if (root["epsilon"]) {
    epsilon = r.number(root["epsilon"], "epsilon");
    if (epsilon < 0.0) r.fail(root["epsilon"], "epsilon must be non-negative");
  }

  ScenarioDocument doc{std::move(name),
                       Scenario{std::move(plant), std::move(*controller), std::move(initial),
                                std::move(disturbance), horizon, std::move(partition)},
                       SafetySpec{std::move(unsafe)}, epsilon};
  try {
    doc.scenario.validate();
  } catch (const ArgumentError& e) {
    throw ParseError(source, 0, e.what());
  }
  return doc;
}

ScenarioDocument load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.string(), path.parent_path());
}

std::string format_scenario(const ScenarioDocument& doc) {
  const Scenario& s = doc.scenario;
  std::string out = "format: " + std::string(kScenarioFormat) + "\n";
  out += "name: " + quoted(doc.name) + "\n";
  out += "plant:\n";
  if (const auto* lin = std::get_if<LinearPlant>(&s.plant)) {
    out += "  kind: linear\n";
    write_matrix(out, "  ", "A", lin->a());
    write_matrix(out, "  ", "B", lin->b());
    write_matrix(out, "  ", "C", lin->c());
  } else {
    const auto& nl = std::get<NonlinearPlant>(s.plant);
    if (nl.name().empty()) throw ArgumentError("only named nonlinear plants can be written to a scenario file");
    out += "  kind: " + nl.name() + "\n";
    out += "  parameters:\n";
    for (const auto& [key, value] : nl.parameters()) out += "    " + key + ": " + format_double(value) + "\n";
  }
  out += "controller:\n";
  write_network(out, s.controller, "  ");
  out += "initial_set: " + flow_box(s.initial_set) + "\n";
  if (s.disturbance_set) out += "disturbance_set: " + flow_box(*s.disturbance_set) + "\n";
  out += "horizon: " + std::to_string(s.horizon) + "\n";
  out += "partition: " + flow_list(s.partition.counts()) + "\n";
  out += "epsilon: " + format_double(doc.epsilon) + "\n";
  out += "unsafe:";
  if (doc.safety.unsafe.empty()) out += " []";
  out += "\n";
  for (const auto& b : doc.safety.unsafe) out += "  - " + flow_box(b) + "\n";
  return out;
}

DocumentKind detect_document(std::string_view text, const std::string& source) {
  const Reader r(source);
  const YAML::Node root = r.load(text);
  if (const YAML::Node f = root["format"]) {
    const std::string tag = r.text(f, "format");
    if (tag == kNetworkFormat) return DocumentKind::network;
    if (tag == kScenarioFormat) return DocumentKind::scenario;
    r.fail(f, "unknown document format '" + tag + "'");
  }
  if (root["plant"]) return DocumentKind::scenario;
  if (root["layers"]) return DocumentKind::network;
  throw ParseError(source, 1, "cannot tell whether this is a network or a scenario");
}

// --- command-line values ----------------------------------------------------

namespace {

double parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(value))
    throw ArgumentError("not a finite number: '" + std::string(s) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

HyperBox parse_box_arg(std::string_view text) {
  std::vector<Interval> dims;
  for (auto part : split(text, ',')) {
    const std::size_t colon = part.find(':');
    if (colon == std::string_view::npos) {
      dims.push_back(Interval::point(parse_number(part)));
    } else {
      dims.emplace_back(parse_number(part.substr(0, colon)), parse_number(part.substr(colon + 1)));
    }
  }
  return HyperBox(std::move(dims));
}

PartitionSpec parse_partition_arg(std::string_view text, std::size_t dim) {
  std::vector<std::size_t> counts;
  for (auto part : split(text, ',')) {
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc() || end != part.data() + part.size())
      throw ArgumentError("partition counts must be positive integers, got '" + std::string(part) + "'");
    counts.push_back(value);
  }
  if (counts.size() == 1 && dim > 1) counts.assign(dim, counts.front());
  return PartitionSpec(std::move(counts));
}

// --- CSV --------------------------------------------------------------------

std::string format_points(const std::vector<Point>& points, std::string_view prefix) {
  std::string out;
  const std::size_t dim = points.empty() ? 0 : points.front().size();
  for (std::size_t i = 0; i < dim; ++i)
    out += (i ? "," : "") + std::string(prefix) + std::to_string(i + 1);
  out += "\n";
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + format_double(p[i]);
    out += "\n";
  }
  return out;
}

std::string format_trajectories(const std::vector<Trajectory>& trajectories) {
  std::string out = "sample,t";
  const std::size_t dim = trajectories.empty() || trajectories.front().empty() ? 0 : trajectories.front().front().size();
  for (std::size_t i = 0; i < dim; ++i) out += ",x" + std::to_string(i + 1);
  out += "\n";
  for (std::size_t k = 0; k < trajectories.size(); ++k) {
    for (std::size_t t = 0; t < trajectories[k].size(); ++t) {
      out += std::to_string(k) + "," + std::to_string(t);
      for (double v : trajectories[k][t]) out += "," + format_double(v);
      out += "\n";
    }
  }
  return out;
}

}  // namespace nnreach

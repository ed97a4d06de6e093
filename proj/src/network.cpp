#include "nnreach/network.hpp"

#include <cmath>
#include <string>

#include "nnreach/error.hpp"
#include "parallel.hpp"

namespace nnreach {

std::string_view to_string(Activation kind) {
  switch (kind) {
    case Activation::relu: return "relu";
    case Activation::logistic: return "logistic";
    case Activation::tanh: return "tanh";
    case Activation::linear: return "linear";
    case Activation::gaussian: return "gaussian";
  }
  return "unknown";
}

std::optional<Activation> parse_activation(std::string_view name) {
  for (auto kind : {Activation::relu, Activation::logistic, Activation::tanh, Activation::linear,
                    Activation::gaussian})
    if (name == to_string(kind)) return kind;
  // Common aliases from other toolchains.
  if (name == "purelin" || name == "identity") return Activation::linear;
  if (name == "sigmoid" || name == "logsig") return Activation::logistic;
  if (name == "tansig") return Activation::tanh;
  return std::nullopt;
}

bool is_monotone(Activation kind) { return kind != Activation::gaussian; }

double eval_activation(Activation kind, double z) {
  switch (kind) {
    case Activation::relu: return z > 0.0 ? z : 0.0;
    case Activation::logistic: return 1.0 / (1.0 + std::exp(-z));
    case Activation::tanh: return std::tanh(z);
    case Activation::linear: return z;
    case Activation::gaussian: return std::exp(-z * z);
  }
  throw UnsupportedActivation("unknown activation kind");
}

Interval activation_range(Activation kind, const Interval& z) {
  if (is_monotone(kind)) return Interval(eval_activation(kind, z.lo()), eval_activation(kind, z.hi()));
  if (kind != Activation::gaussian)
    throw UnsupportedActivation("no bound rule for activation " + std::string(to_string(kind)));

  const auto phi = [](double v) { return std::exp(-v * v); };
  if (z.hi() <= 0.0) return Interval(phi(z.lo()), phi(z.hi()));
  if (z.lo() >= 0.0) return Interval(phi(z.hi()), phi(z.lo()));
  // Peak inside: the minimum sits at the endpoint farther from zero.
  if (z.lo() + z.hi() <= 0.0) return Interval(phi(z.lo()), 1.0);
  return Interval(phi(z.hi()), 1.0);
}

// --- model ------------------------------------------------------------------

Layer::Layer(Matrix weights, Vector bias, Activation activation)
    : weights_(std::move(weights)), bias_(std::move(bias)), activation_(activation) {
  if (weights_.rows() == 0 || weights_.cols() == 0)
    throw ArgumentError("layer weight matrix must be non-empty");
  if (bias_.size() != weights_.rows())
    throw ArgumentError("bias has " + std::to_string(bias_.size()) + " entries but the layer has " +
                        std::to_string(weights_.rows()) + " neurons");
  if (!weights_.allFinite() || !bias_.allFinite())
    throw ArgumentError("layer parameters must be finite");
}

Vector Layer::eval(const Vector& input) const {
  Vector z = weights_ * input + bias_;
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = eval_activation(activation_, z[i]);
  return z;
}

NetworkModel::NetworkModel(std::vector<Layer> layers, std::string name)
    : layers_(std::move(layers)), name_(std::move(name)) {
  if (layers_.empty()) throw ArgumentError("a network needs at least one layer");
  for (std::size_t l = 1; l < layers_.size(); ++l)
    if (layers_[l].input_dim() != layers_[l - 1].output_dim())
      throw ArgumentError("layer " + std::to_string(l + 1) + " expects " +
                          std::to_string(layers_[l].input_dim()) + " inputs but layer " +
                          std::to_string(l) + " produces " +
                          std::to_string(layers_[l - 1].output_dim()));
}

std::vector<double> eval_network(const NetworkModel& net, std::span<const double> input) {
  if (input.size() != net.input_dim())
    throw ArgumentError("network expects " + std::to_string(net.input_dim()) + " inputs, got " +
                        std::to_string(input.size()));
  Vector x = Eigen::Map<const Vector>(input.data(), static_cast<Eigen::Index>(input.size()));
  for (const auto& layer : net.layers()) x = layer.eval(x);
  return {x.data(), x.data() + x.size()};
}

// --- bound propagation ------------------------------------------------------

Interval affine_bounds(std::span<const double> w, double theta, const HyperBox& box) {
  if (w.size() != box.dim())
    throw ArgumentError("weight row has " + std::to_string(w.size()) + " entries but the box has " +
                        std::to_string(box.dim()) + " dimensions");
  double lo = theta;
  double hi = theta;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] >= 0.0) {
      lo += w[j] * box[j].lo();
      hi += w[j] * box[j].hi();
    } else {
      lo += w[j] * box[j].hi();
      hi += w[j] * box[j].lo();
    }
  }
  return Interval(lo, hi);
}

HyperBox layer_output_box(const Layer& layer, const HyperBox& in_box) {
  if (in_box.dim() != layer.input_dim())
    throw ArgumentError("layer expects " + std::to_string(layer.input_dim()) +
                        "-dimensional input, got " + std::to_string(in_box.dim()));
  std::vector<Interval> out;
  out.reserve(layer.output_dim());
  for (std::size_t i = 0; i < layer.output_dim(); ++i) {
    const Interval z = affine_bounds(layer.row(i), layer.bias()[static_cast<Eigen::Index>(i)], in_box);
    out.push_back(activation_range(layer.activation(), z));
  }
  return HyperBox(std::move(out));
}

HyperBox network_output_box(const NetworkModel& net, const HyperBox& in_box) {
  HyperBox box = in_box;
  for (const auto& layer : net.layers()) box = layer_output_box(layer, box);
  return box;
}

BoxUnion reach_mlp(const NetworkModel& net, const BoxUnion& h, const PartitionSpec& m,
                   const ReachOptions& options) {
  if (h.dim() != net.input_dim())
    throw ArgumentError("input set has dimension " + std::to_string(h.dim()) +
                        " but the network expects " + std::to_string(net.input_dim()));
  const BoxUnion cells = partition_union(h, interval_hull(h), m);

  std::vector<std::optional<HyperBox>> outputs(cells.size());
  detail::parallel_for(cells.size(), options.threads, [&](std::size_t p) {
    outputs[p] = network_output_box(net, cells[p]).inflated(options.epsilon);
  });

  BoxUnion result(net.output_dim());
  for (std::size_t p = 0; p < cells.size(); ++p) result.push_back(std::move(*outputs[p]), cells.source(p));
  return result;
}

}  // namespace nnreach

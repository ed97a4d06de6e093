#pragma once

// Multi-layer perceptron model and its layer-by-layer output-set over-approximation.

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nnreach/geometry.hpp"

namespace nnreach {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

enum class Activation { relu, logistic, tanh, linear, gaussian };

std::string_view to_string(Activation kind);
std::optional<Activation> parse_activation(std::string_view name);

// relu, logistic, tanh and linear are non-decreasing; gaussian (e^{-z^2}) is not.
bool is_monotone(Activation kind);

double eval_activation(Activation kind, double z);

// Exact range of the activation over [z.lo, z.hi]. Monotone kinds map endpoints;
// gaussian uses the four-branch rule around its peak at z = 0.
Interval activation_range(Activation kind, const Interval& z);

class Layer {
 public:
  // weights is n_out x n_in; bias has n_out entries. All entries must be finite.
  Layer(Matrix weights, Vector bias, Activation activation);

  std::size_t input_dim() const noexcept { return static_cast<std::size_t>(weights_.cols()); }
  std::size_t output_dim() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
  const Matrix& weights() const noexcept { return weights_; }
  const Vector& bias() const noexcept { return bias_; }
  Activation activation() const noexcept { return activation_; }

  std::span<const double> row(std::size_t i) const {
    return {weights_.data() + i * input_dim(), input_dim()};
  }

  Vector eval(const Vector& input) const;

 private:
  Matrix weights_;
  Vector bias_;
  Activation activation_;
};

class NetworkModel {
 public:
  // Throws ArgumentError when the list is empty or consecutive layers disagree.
  explicit NetworkModel(std::vector<Layer> layers, std::string name = {});

  std::size_t input_dim() const noexcept { return layers_.front().input_dim(); }
  std::size_t output_dim() const noexcept { return layers_.back().output_dim(); }
  std::size_t depth() const noexcept { return layers_.size(); }
  const std::vector<Layer>& layers() const noexcept { return layers_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::vector<Layer> layers_;
  std::string name_;
};

std::vector<double> eval_network(const NetworkModel& net, std::span<const double> input);

// Exact [min, max] of w . x + theta over the box, from the sign of each weight.
Interval affine_bounds(std::span<const double> w, double theta, const HyperBox& box);

// Box containing activation(W x + b) for every x in in_box.
HyperBox layer_output_box(const Layer& layer, const HyperBox& in_box);

// Propagates one input box through every layer.
HyperBox network_output_box(const NetworkModel& net, const HyperBox& in_box);

struct ReachOptions {
  // Worker threads for per-cell propagation; results do not depend on it.
  unsigned threads = 1;
  // Outward padding applied to every result box.
  double epsilon = 0.0;
};

// Partitions the interval hull of h with m, drops cells that miss h, and returns one
// output box per retained cell (tagged with the cell's grid index), in cell order.
BoxUnion reach_mlp(const NetworkModel& net, const BoxUnion& h, const PartitionSpec& m,
                   const ReachOptions& options = {});

}  // namespace nnreach

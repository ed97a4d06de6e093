#pragma once

// Discrete-time plants x(t+1) = f(x(t), u(t)), y(t) = h(x(t)) and their set-valued
// one-step maps.

#include <functional>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nnreach/expr.hpp"
#include "nnreach/geometry.hpp"
#include "nnreach/network.hpp"

namespace nnreach {

class LinearPlant {
 public:
  // A: n_x x n_x, B: n_x x n_u, C: n_y x n_x.
  LinearPlant(Matrix a, Matrix b, Matrix c);

  const Matrix& a() const noexcept { return a_; }
  const Matrix& b() const noexcept { return b_; }
  const Matrix& c() const noexcept { return c_; }

  std::size_t state_dim() const noexcept { return static_cast<std::size_t>(a_.rows()); }
  std::size_t input_dim() const noexcept { return static_cast<std::size_t>(b_.cols()); }
  std::size_t output_dim() const noexcept { return static_cast<std::size_t>(c_.rows()); }

 private:
  Matrix a_, b_, c_;
};

class NonlinearPlant {
 public:
  using PointMap = std::function<std::vector<double>(std::span<const double>, std::span<const double>)>;
  using OutputMap = std::function<std::vector<double>(std::span<const double>)>;
  using BoxMap = std::function<HyperBox(const HyperBox&, const HyperBox&)>;
  using OutputBoxMap = std::function<HyperBox(const HyperBox&)>;

  // The interval extensions must enclose the point maps over their argument boxes.
  NonlinearPlant(std::size_t state_dim, std::size_t input_dim, std::size_t output_dim,
                 PointMap f, OutputMap h, BoxMap f_box, OutputBoxMap h_box);

  // Builds all four maps from expressions: next-state[i] = f[i](x, u), y[k] = h[k](x).
  static NonlinearPlant from_expressions(std::size_t state_dim, std::size_t input_dim,
                                         std::vector<Expr> f, std::vector<Expr> h);

  std::size_t state_dim() const noexcept { return state_dim_; }
  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t output_dim() const noexcept { return output_dim_; }

  std::vector<double> next_state(std::span<const double> x, std::span<const double> u) const {
    return f_(x, u);
  }
  std::vector<double> output(std::span<const double> x) const { return h_(x); }
  HyperBox next_state_box(const HyperBox& x, const HyperBox& u) const { return f_box_(x, u); }
  HyperBox output_box(const HyperBox& x) const { return h_box_(x); }

  // Registry identity, kept so a plant can be written back to a scenario file.
  const std::string& name() const noexcept { return name_; }
  const std::map<std::string, double>& parameters() const noexcept { return parameters_; }
  NonlinearPlant& set_identity(std::string name, std::map<std::string, double> parameters);

 private:
  std::size_t state_dim_, input_dim_, output_dim_;
  PointMap f_;
  OutputMap h_;
  BoxMap f_box_;
  OutputBoxMap h_box_;
  std::string name_;
  std::map<std::string, double> parameters_;
};

using PlantModel = std::variant<LinearPlant, NonlinearPlant>;

std::size_t state_dim(const PlantModel& plant);
std::size_t input_dim(const PlantModel& plant);
std::size_t output_dim(const PlantModel& plant);

// Box containing f(x, u) for all x in x_set, u in u_set. Exact interval hull of the
// image for linear plants.
HyperBox reach_ode_x(const PlantModel& plant, const HyperBox& u_set, const HyperBox& x_set);

// Box containing h(x) for all x in x_set.
HyperBox reach_ode_y(const PlantModel& plant, const HyperBox& x_set);

struct PlantStep {
  std::vector<double> next_state;
  std::vector<double> output;
};

PlantStep step_plant(const PlantModel& plant, std::span<const double> x, std::span<const double> u);

std::vector<double> plant_output(const PlantModel& plant, std::span<const double> x);

// Named nonlinear plants for scenario files. Unknown names or parameters throw
// ArgumentError; missing parameters take their defaults.
//   van_der_pol:                 dt = 0.05, mu = 1.0   (2 states, 1 input, y = x)
//   saturated_double_integrator: dt = 0.1, gain = 1.0  (2 states, 1 input, y = x1)
NonlinearPlant make_named_plant(const std::string& name,
                                const std::map<std::string, double>& parameters);
std::vector<std::string> named_plants();

}  // namespace nnreach

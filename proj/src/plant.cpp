#include "nnreach/plant.hpp"

#include <cmath>
#include <string>

#include "nnreach/error.hpp"

namespace nnreach {

namespace {

void require_finite(const Matrix& m, const char* name) {
  if (!m.allFinite()) throw ArgumentError(std::string("plant matrix ") + name + " has non-finite entries");
}

std::span<const double> row_of(const Matrix& m, Eigen::Index i) {
  return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

void check_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw ArgumentError(std::string(what) + " has dimension " + std::to_string(got) + ", plant expects " +
                        std::to_string(want));
}

}  // namespace

LinearPlant::LinearPlant(Matrix a, Matrix b, Matrix c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols()) throw ArgumentError("A must be a non-empty square matrix");
  if (b_.rows() != a_.rows() || b_.cols() == 0)
    throw ArgumentError("B must have one row per state and at least one column");
  if (c_.cols() != a_.rows() || c_.rows() == 0)
    throw ArgumentError("C must have one column per state and at least one row");
  require_finite(a_, "A");
  require_finite(b_, "B");
  require_finite(c_, "C");
}

NonlinearPlant::NonlinearPlant(std::size_t state_dim, std::size_t input_dim, std::size_t output_dim,
                               PointMap f, OutputMap h, BoxMap f_box, OutputBoxMap h_box)
    : state_dim_(state_dim),
      input_dim_(input_dim),
      output_dim_(output_dim),
      f_(std::move(f)),
      h_(std::move(h)),
      f_box_(std::move(f_box)),
      h_box_(std::move(h_box)) {
  if (state_dim_ == 0 || input_dim_ == 0 || output_dim_ == 0)
    throw ArgumentError("plant dimensions must be positive");
  if (!f_ || !h_ || !f_box_ || !h_box_) throw ArgumentError("nonlinear plant maps must all be set");
}

NonlinearPlant NonlinearPlant::from_expressions(std::size_t state_dim, std::size_t input_dim,
                                                std::vector<Expr> f, std::vector<Expr> h) {
  if (f.size() != state_dim) throw ArgumentError("need one state-update expression per state");
  for (const auto& e : f)
    if (e.state_arity() > state_dim || e.input_arity() > input_dim)
      throw ArgumentError("state-update expression references an unknown variable");
  for (const auto& e : h)
    if (e.state_arity() > state_dim || e.input_arity() > 0)
      throw ArgumentError("output expressions may only reference states");

  auto point = [f](std::span<const double> x, std::span<const double> u) {
    std::vector<double> out;
    out.reserve(f.size());
    for (const auto& e : f) out.push_back(e.eval(x, u));
    return out;
  };
  auto out_point = [h](std::span<const double> x) {
    std::vector<double> out;
    out.reserve(h.size());
    for (const auto& e : h) out.push_back(e.eval(x, {}));
    return out;
  };
  auto box = [f](const HyperBox& x, const HyperBox& u) {
    std::vector<Interval> out;
    out.reserve(f.size());
    for (const auto& e : f) out.push_back(e.eval(x, &u));
    return HyperBox(std::move(out));
  };
  auto out_box = [h](const HyperBox& x) {
    std::vector<Interval> out;
    out.reserve(h.size());
    for (const auto& e : h) out.push_back(e.eval(x, nullptr));
    return HyperBox(std::move(out));
  };
  return NonlinearPlant(state_dim, input_dim, h.size(), point, out_point, box, out_box);
}

NonlinearPlant& NonlinearPlant::set_identity(std::string name, std::map<std::string, double> parameters) {
  name_ = std::move(name);
  parameters_ = std::move(parameters);
  return *this;
}

std::size_t state_dim(const PlantModel& plant) {
  return std::visit([](const auto& p) { return p.state_dim(); }, plant);
}
std::size_t input_dim(const PlantModel& plant) {
  return std::visit([](const auto& p) { return p.input_dim(); }, plant);
}
std::size_t output_dim(const PlantModel& plant) {
  return std::visit([](const auto& p) { return p.output_dim(); }, plant);
}

HyperBox reach_ode_x(const PlantModel& plant, const HyperBox& u_set, const HyperBox& x_set) {
  check_dim(x_set.dim(), state_dim(plant), "state set");
  check_dim(u_set.dim(), input_dim(plant), "input set");
  if (const auto* lin = std::get_if<LinearPlant>(&plant)) {
    std::vector<Interval> out;
    out.reserve(lin->state_dim());
    for (Eigen::Index i = 0; i < lin->a().rows(); ++i)
      out.push_back(affine_bounds(row_of(lin->a(), i), 0.0, x_set) +
                    affine_bounds(row_of(lin->b(), i), 0.0, u_set));
    return HyperBox(std::move(out));
  }
  const auto& nl = std::get<NonlinearPlant>(plant);
  HyperBox out = nl.next_state_box(x_set, u_set);
  if (out.dim() != nl.state_dim()) throw InvariantError("state interval extension returned wrong dimension");
  return out;
}

HyperBox reach_ode_y(const PlantModel& plant, const HyperBox& x_set) {
  check_dim(x_set.dim(), state_dim(plant), "state set");
  if (const auto* lin = std::get_if<LinearPlant>(&plant)) {
    std::vector<Interval> out;
    out.reserve(lin->output_dim());
    for (Eigen::Index i = 0; i < lin->c().rows(); ++i)
      out.push_back(affine_bounds(row_of(lin->c(), i), 0.0, x_set));
    return HyperBox(std::move(out));
  }
  const auto& nl = std::get<NonlinearPlant>(plant);
  HyperBox out = nl.output_box(x_set);
  if (out.dim() != nl.output_dim()) throw InvariantError("output interval extension returned wrong dimension");
  return out;
}

PlantStep step_plant(const PlantModel& plant, std::span<const double> x, std::span<const double> u) {
  check_dim(x.size(), state_dim(plant), "state");
  check_dim(u.size(), input_dim(plant), "input");
  if (const auto* lin = std::get_if<LinearPlant>(&plant)) {
    const auto xv = Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size()));
    const auto uv = Eigen::Map<const Vector>(u.data(), static_cast<Eigen::Index>(u.size()));
    const Vector next = lin->a() * xv + lin->b() * uv;
    const Vector y = lin->c() * xv;
    return {{next.data(), next.data() + next.size()}, {y.data(), y.data() + y.size()}};
  }
  const auto& nl = std::get<NonlinearPlant>(plant);
  return {nl.next_state(x, u), nl.output(x)};
}

std::vector<double> plant_output(const PlantModel& plant, std::span<const double> x) {
  check_dim(x.size(), state_dim(plant), "state");
  if (const auto* lin = std::get_if<LinearPlant>(&plant)) {
    const Vector y = lin->c() * Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size()));
    return {y.data(), y.data() + y.size()};
  }
  return std::get<NonlinearPlant>(plant).output(x);
}

// --- named plants -----------------------------------------------------------

namespace {

std::map<std::string, double> resolve(const std::string& name, std::map<std::string, double> defaults,
                                      const std::map<std::string, double>& given) {
  for (const auto& [key, value] : given) {
    auto it = defaults.find(key);
    if (it == defaults.end()) throw ArgumentError("plant '" + name + "' has no parameter '" + key + "'");
    if (!std::isfinite(value)) throw ArgumentError("plant parameter '" + key + "' must be finite");
    it->second = value;
  }
  return defaults;
}

}  // namespace

NonlinearPlant make_named_plant(const std::string& name, const std::map<std::string, double>& parameters) {
  const auto x1 = Expr::state(0);
  const auto x2 = Expr::state(1);
  const auto u = Expr::input(0);
  if (name == "van_der_pol") {
    auto p = resolve(name, {{"dt", 0.05}, {"mu", 1.0}}, parameters);
    const double dt = p["dt"], mu = p["mu"];
    // Forward-Euler discretisation of x1' = x2, x2' = mu (1 - x1^2) x2 - x1 + u.
    const auto x1sq = x1 * x1;
    std::vector<Expr> f = {x1 + dt * x2, x2 + dt * (mu * ((1.0 + -x1sq) * x2) - x1 + u)};
    std::vector<Expr> h = {x1, x2};
    return NonlinearPlant::from_expressions(2, 1, std::move(f), std::move(h)).set_identity(name, p);
  }
  if (name == "saturated_double_integrator") {
    auto p = resolve(name, {{"dt", 0.1}, {"gain", 1.0}}, parameters);
    const double dt = p["dt"], gain = p["gain"];
    std::vector<Expr> f = {x1 + dt * x2, x2 + (dt * gain) * Expr::apply(Activation::tanh, u)};
    std::vector<Expr> h = {x1};
    return NonlinearPlant::from_expressions(2, 1, std::move(f), std::move(h)).set_identity(name, p);
  }
  throw ArgumentError("unknown plant '" + name + "'");
}

std::vector<std::string> named_plants() { return {"saturated_double_integrator", "van_der_pol"}; }

}  // namespace nnreach

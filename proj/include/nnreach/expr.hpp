#pragma once

// Small expression trees over state and input variables. An expression evaluates
// both pointwise and as a natural interval extension, which is sound because every
// node (+, -, *, constants and the activation functions) has an exact or enclosing
// interval rule.

#include <memory>
#include <span>

#include "nnreach/geometry.hpp"
#include "nnreach/network.hpp"

namespace nnreach {

class Expr {
 public:
  static Expr constant(double value);
  static Expr state(std::size_t index);
  static Expr input(std::size_t index);
  static Expr apply(Activation kind, Expr arg);

  double eval(std::span<const double> x, std::span<const double> u) const;
  Interval eval(const HyperBox& x, const HyperBox* u) const;

  // Largest state / input index referenced plus one (0 if none).
  std::size_t state_arity() const;
  std::size_t input_arity() const;

  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator-(Expr a);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline Expr operator*(double k, Expr a) { return Expr::constant(k) * std::move(a); }
inline Expr operator+(double k, Expr a) { return Expr::constant(k) + std::move(a); }

}  // namespace nnreach

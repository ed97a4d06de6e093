#include "nnreach/expr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nnreach/error.hpp"

namespace nnreach {

struct Expr::Node {
  enum class Op { constant, state, input, add, sub, mul, neg, activation };
  Op op;
  double value = 0.0;
  std::size_t index = 0;
  Activation kind = Activation::linear;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expr::Node;
using Op = Node::Op;

double eval_point(const Node& n, std::span<const double> x, std::span<const double> u) {
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::state:
      if (n.index >= x.size()) throw ArgumentError("state index out of range");
      return x[n.index];
    case Op::input:
      if (n.index >= u.size()) throw ArgumentError("input index out of range");
      return u[n.index];
    case Op::add: return eval_point(*n.lhs, x, u) + eval_point(*n.rhs, x, u);
    case Op::sub: return eval_point(*n.lhs, x, u) - eval_point(*n.rhs, x, u);
    case Op::mul: return eval_point(*n.lhs, x, u) * eval_point(*n.rhs, x, u);
    case Op::neg: return -eval_point(*n.lhs, x, u);
    case Op::activation: return eval_activation(n.kind, eval_point(*n.lhs, x, u));
  }
  throw InvariantError("corrupt expression node");
}

Interval eval_box(const Node& n, const HyperBox& x, const HyperBox* u) {
  switch (n.op) {
    case Op::constant: return Interval::point(n.value);
    case Op::state:
      if (n.index >= x.dim()) throw ArgumentError("state index out of range");
      return x[n.index];
    case Op::input:
      if (u == nullptr || n.index >= u->dim()) throw ArgumentError("input index out of range");
      return (*u)[n.index];
    case Op::add: return eval_box(*n.lhs, x, u) + eval_box(*n.rhs, x, u);
    case Op::sub: return eval_box(*n.lhs, x, u) - eval_box(*n.rhs, x, u);
    case Op::mul: {
      // x * x is a square, which is never negative.
      if (n.lhs == n.rhs) {
        const Interval a = eval_box(*n.lhs, x, u);
        const double lo2 = a.lo() * a.lo(), hi2 = a.hi() * a.hi();
        if (a.contains(0.0)) return Interval(0.0, std::max(lo2, hi2));
        return Interval(std::min(lo2, hi2), std::max(lo2, hi2));
      }
      return eval_box(*n.lhs, x, u) * eval_box(*n.rhs, x, u);
    }
    case Op::neg: return -eval_box(*n.lhs, x, u);
    case Op::activation: return activation_range(n.kind, eval_box(*n.lhs, x, u));
  }
  throw InvariantError("corrupt expression node");
}

std::shared_ptr<const Node> make_node(Op op, double value = 0.0, std::size_t index = 0,
                                      Activation kind = Activation::linear, std::shared_ptr<const Node> lhs = {},
                                      std::shared_ptr<const Node> rhs = {}) {
  return std::make_shared<const Node>(Node{op, value, index, kind, std::move(lhs), std::move(rhs)});
}

std::size_t arity(const Node* n, Op leaf) {
  if (n == nullptr) return 0;
  if (n->op == leaf) return n->index + 1;
  return std::max(arity(n->lhs.get(), leaf), arity(n->rhs.get(), leaf));
}

}  // namespace

Expr Expr::constant(double value) {
  if (!std::isfinite(value)) throw ArgumentError("expression constants must be finite");
  return Expr(make_node(Op::constant, value));
}

Expr Expr::state(std::size_t index) {
  return Expr(make_node(Op::state, 0.0, index));
}

Expr Expr::input(std::size_t index) {
  return Expr(make_node(Op::input, 0.0, index));
}

Expr Expr::apply(Activation kind, Expr arg) {
  return Expr(make_node(Op::activation, 0.0, 0, kind, std::move(arg.node_)));
}

Expr operator+(Expr a, Expr b) {
  return Expr(make_node(Op::add, 0.0, 0, Activation::linear, std::move(a.node_), std::move(b.node_)));
}

Expr operator-(Expr a, Expr b) {
  return Expr(make_node(Op::sub, 0.0, 0, Activation::linear, std::move(a.node_), std::move(b.node_)));
}

Expr operator*(Expr a, Expr b) {
  return Expr(make_node(Op::mul, 0.0, 0, Activation::linear, std::move(a.node_), std::move(b.node_)));
}

Expr operator-(Expr a) {
  return Expr(make_node(Op::neg, 0.0, 0, Activation::linear, std::move(a.node_)));
}

double Expr::eval(std::span<const double> x, std::span<const double> u) const {
  return eval_point(*node_, x, u);
}

Interval Expr::eval(const HyperBox& x, const HyperBox* u) const { return eval_box(*node_, x, u); }

std::size_t Expr::state_arity() const { return arity(node_.get(), Op::state); }
std::size_t Expr::input_arity() const { return arity(node_.get(), Op::input); }

}  // namespace nnreach

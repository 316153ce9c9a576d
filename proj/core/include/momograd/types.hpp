#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>

namespace momograd {

using Vector = Eigen::VectorXd;

/// Jacobian of the objective vector; row i holds the gradient of F_i.
using Jacobian = Eigen::MatrixXd;

/// An objective or Jacobian evaluation produced NaN/Inf at a point the
/// caller has to trust (initial point or an accepted iterate).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed quantity violated a guarantee the parameter rules are supposed
/// to enforce. This is a bug in the caller's setup, not bad input data, so it
/// is never swallowed by the experiment driver.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Smooth unconstrained problem F: R^n -> R^m to be minimized in the
/// componentwise partial order. The box [lower, upper] only bounds where
/// starting points are sampled; iterates may leave it.
struct MultiObjectiveProblem {
  std::string name;
  int n = 0;
  int m = 0;
  std::function<Vector(const Vector&)> eval;
  std::function<Jacobian(const Vector&)> jac;
  Vector lower;
  Vector upper;
  bool convex = false;
};

/// Evaluate F and fail loudly on non-finite values or shape mismatches.
inline Vector eval_checked(const MultiObjectiveProblem& p, const Vector& x) {
  Vector fx = p.eval(x);
  if (fx.size() != p.m)
    throw EvalError(p.name + ": objective returned " + std::to_string(fx.size()) +
                    " components, expected " + std::to_string(p.m));
  if (!fx.allFinite()) throw EvalError(p.name + ": non-finite objective value");
  return fx;
}

/// Evaluate the Jacobian with the same checks.
inline Jacobian jac_checked(const MultiObjectiveProblem& p, const Vector& x) {
  Jacobian jf = p.jac(x);
  if (jf.rows() != p.m || jf.cols() != p.n)
    throw EvalError(p.name + ": Jacobian shape mismatch");
  if (!jf.allFinite()) throw EvalError(p.name + ": non-finite Jacobian entry");
  return jf;
}

}  // namespace momograd

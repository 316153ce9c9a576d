#pragma once

#include "momograd/types.hpp"

namespace momograd {

struct LineSearchConfig {
  double rho = 1e-4;   ///< Armijo slope fraction
  double delta = 0.5;  ///< backtracking shrink factor
  enum class Init {
    TauK,  ///< start from tau_k = -psi(x, d) / ||d||^2
    Unit,  ///< start from 1
  } init = Init::Unit;
  int max_backtracks = 60;
  /// Jacobian Lipschitz constant for the fixed-step rule; must be > 0 when
  /// that rule is selected, unused otherwise.
  double lipschitz_L = 0;
};

struct ArmijoResult {
  bool accepted = false;
  double alpha = 0;
  Vector fx_new;      ///< objective at x + alpha d, valid when accepted
  int f_evals = 0;    ///< trial evaluations consumed, accepted or not
};

/// Componentwise Armijo backtracking: the first alpha in
/// {a0, a0 delta, a0 delta^2, ...} with
///   F_i(x + alpha d) <= F_i(x) + rho alpha psi_xd   for every i.
/// Trial points with non-finite objective values are rejected like any
/// other failed test; they only consume budget. Requires psi_xd < 0 and
/// d != 0. accepted = false after max_backtracks rejections.
ArmijoResult armijo_backtrack(const MultiObjectiveProblem& problem, const Vector& x,
                              const Vector& fx, const Vector& d, double psi_xd,
                              const LineSearchConfig& cfg);

/// Fixed step -psi_xd / (2 L ||d||^2) from the descent-lemma bound.
double lipschitz_step(double psi_xd, double d_norm_sq, double lipschitz_L);

}  // namespace momograd

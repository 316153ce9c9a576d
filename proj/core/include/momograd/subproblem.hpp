#pragma once

#include "momograd/core.hpp"

#include <vector>

namespace momograd {

/// Solution of the direction-finding subproblem
///   min_d max_i <grad F_i(x), d> + ||d||^2 / 2
/// together with the dual convex multipliers that produced it.
struct SubproblemSolution {
  Vector v;              ///< minimizer, v = -JF^T lambda
  double theta = 0;      ///< optimal value psi(JF, v) + ||v||^2 / 2
  Vector lambda;         ///< multipliers on the unit simplex
  double kkt_residual = 0;  ///< inf-norm of lambda - proj(lambda - grad q(lambda))
  int inner_iterations = 0;
};

struct SubproblemOptions {
  /// Stop once a projected-gradient sweep moves lambda by less than this.
  double tol = 1e-10;
  int max_iterations = 10000;
};

/// Euclidean projection onto the unit simplex {l >= 0, sum_i l_i = 1}.
Vector project_to_simplex(const Vector& u);

/// Solve the dual form of the subproblem,
///   min_{lambda in simplex} q(lambda),  q(lambda) = ||JF^T lambda||^2,
/// and assemble v, theta from the optimal lambda. m = 1 is immediate and
/// m = 2 reduces to a scalar clamp; larger m runs projected gradient with a
/// fixed step below 1/L, L = 2 ||G||_F >= Lipschitz(grad q), G = JF JF^T.
/// Each sweep decreases q, so the iteration needs no line search.
///
/// `objective_log`, when non-null, receives q(lambda) after every inner
/// iteration (diagnostics and tests only).
SubproblemSolution solve_dual(const Jacobian& jf, const SubproblemOptions& opts = {},
                              std::vector<double>* objective_log = nullptr);

/// Stationarity test: x is Pareto critical within eps_theta iff |theta| is
/// at most eps_theta (theta vanishes exactly at critical points and is
/// strictly negative elsewhere).
inline bool is_critical(const SubproblemSolution& s, double eps_theta) {
  return std::abs(s.theta) <= eps_theta;
}

}  // namespace momograd

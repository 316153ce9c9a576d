#pragma once

#include "momograd/solver.hpp"

namespace momograd {

/// Count stepped iterations violating the sufficient-descent guarantee
///   psi(x^k, d^k) <= (gamma_star / 2) psi(x^k, v^k) + slack.
int sufficient_descent_violations(const SolverTrace& trace, double gamma_star,
                                  double slack = 1e-12);

/// Count stepped iterations where some objective fails the per-step
/// decrease bound
///   F_i(x^k) - F_i(x^{k+1}) >= omega * psi(x^k, d^k)^2 / ||d^k||^2 - slack.
int decrease_bound_violations(const SolverTrace& trace, double omega, double slack = 1e-10);

/// True when every objective is nonincreasing along the trace (up to slack).
bool componentwise_monotone(const SolverTrace& trace, double slack = 0.0);

/// Partial sum of psi(x^k, d^k)^2 / ||d^k||^2 over stepped iterations; the
/// step-length theory makes the full series summable.
double descent_series_sum(const SolverTrace& trace);

/// Least-squares fit of log(F_i(x^k) - F_i(x_term)) against k over the
/// stepped iterations with a positive gap. rate = exp(slope) estimates the
/// per-iteration contraction of objective i.
struct DecayFit {
  double rate = 0;
  double r_squared = 0;
  int points = 0;  ///< gap samples used; fits with < 3 are not meaningful
};
DecayFit fit_geometric_decay(const SolverTrace& trace, int objective);

/// Slope of log(min_{j<=k} ||v^j||) against log(k+1); a convergence-rate
/// proxy, meaningful only for traces with several steps.
double rate_proxy_slope(const SolverTrace& trace);

}  // namespace momograd

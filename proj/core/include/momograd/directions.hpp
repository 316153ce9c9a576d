#pragma once

#include "momograd/subproblem.hpp"

#include <deque>
#include <vector>

namespace momograd {

/// How the weight gamma_k on the steepest direction is chosen.
enum class GammaRule {
  Constant,         ///< gamma_k = 1 for every k
  BarzilaiBorwein,  ///< spectral quotient ||x^k - x^{k-1}|| / ||v^k - v^{k-1}||
};

struct MmgParams {
  int memory = 5;          ///< N, how many past directions enter the update
  GammaRule gamma_rule = GammaRule::Constant;
  double gamma_star = 1e-10;  ///< lower guard on gamma_k (sufficient-descent constant)
  double zeta = 1e-4;         ///< additive slack keeping every phi_kj strictly positive
  double gamma_max = 1e6;     ///< cap on the spectral quotient
};

/// Rolling state shared by the direction rules. history holds
/// d^{k-1}, ..., d^{k-N_k} most recent first; every stored direction
/// satisfied psi < 0 at the iterate that produced it. prev_* refer to
/// iterate k-1.
struct DirectionState {
  std::deque<Vector> history;
  Vector prev_x;
  Vector prev_v;
  double prev_psi_v = 0;  ///< psi(x^{k-1}, v^{k-1})
  double prev_psi_d = 0;  ///< psi(x^{k-1}, d^{k-1})
  int k = 0;

  /// Fold iterate-k data in after a successful step, dropping directions
  /// older than `memory`.
  void advance(const Vector& x, const Vector& v, double psi_v, const Vector& d, double psi_d,
               int memory);
};

/// gamma_k: 1 at k = 0 and under the constant rule; otherwise the clamped
/// spectral quotient, falling back to 1 when the quotient is undefined or
/// below gamma_star. Result is never smaller than gamma_star.
double compute_gamma(const DirectionState& state, const Vector& cur_x, const Vector& cur_v,
                     const MmgParams& params);

/// phi_kj = (psi(x^k, d^{k-j}) + ||JF(x^k)|| ||d^{k-j}|| + zeta) / gamma_k.
/// Positive whenever psi_d_prev respects |psi| <= jf_norm * d_prev_norm,
/// which holds for any genuine evaluation pair.
double compute_phi(double psi_d_prev, double jf_norm, double d_prev_norm, double gamma_k,
                   double zeta);

/// beta_kj = -(1/N_k) psi(x^k, v^k) chi_plus(phi_kj); nonnegative whenever
/// x^k is not critical and phi_kj > 0.
double compute_beta(double psi_v, int n_k, double phi);

struct DirectionResult {
  Vector d;
  double gamma = 1;
  std::vector<double> betas;  ///< beta_k1, ..., beta_kNk (empty at k = 0)
};

/// Memory-gradient direction
///   d^k = gamma_k v^k + sum_{j=1..N_k} beta_kj d^{k-j},
/// with every psi(x^k, d^{k-j}) evaluated against the current Jacobian.
/// Throws ContractViolation if the result is not a descent direction beyond
/// 1e-12 slack, which the phi rule above makes impossible for consistent
/// inputs.
DirectionResult memory_direction(const Vector& cur_x, const SubproblemSolution& cur,
                                 const Jacobian& jf, const DirectionState& state,
                                 const MmgParams& params);

/// Conjugate-gradient-shaped single-step baselines, d = v + beta d^{k-1}.
enum class CgKind { SD, FR, CD, HS };

/// beta per kind from the stored psi values; beta = 0 at k = 0, for SD, and
/// on zero denominators. If the combined direction fails psi < 0 the update
/// falls back to d = v, so the returned direction is always usable.
DirectionResult baseline_direction(CgKind kind, const SubproblemSolution& cur, const Jacobian& jf,
                                   const DirectionState& state);

}  // namespace momograd

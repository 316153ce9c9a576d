#include "momograd/directions.hpp"

#include <cmath>

namespace momograd {

void DirectionState::advance(const Vector& x, const Vector& v, double psi_v, const Vector& d,
                             double psi_d, int memory) {
  prev_x = x;
  prev_v = v;
  prev_psi_v = psi_v;
  prev_psi_d = psi_d;
  history.push_front(d);
  while (static_cast<int>(history.size()) > memory) history.pop_back();
  ++k;
}

double compute_gamma(const DirectionState& state, const Vector& cur_x, const Vector& cur_v,
                     const MmgParams& params) {
  if (state.k == 0 || params.gamma_rule == GammaRule::Constant) return 1.0;
  const double move = (cur_x - state.prev_x).norm();
  const double drift = (cur_v - state.prev_v).norm();
  if (drift == 0.0) return 1.0;
  const double quotient = move / drift;
  if (quotient < params.gamma_star) return 1.0;
  return std::min(quotient, params.gamma_max);
}

double compute_phi(double psi_d_prev, double jf_norm, double d_prev_norm, double gamma_k,
                   double zeta) {
  return (psi_d_prev + jf_norm * d_prev_norm + zeta) / gamma_k;
}

double compute_beta(double psi_v, int n_k, double phi) {
  return -(1.0 / static_cast<double>(n_k)) * psi_v * chi_plus(phi);
}

DirectionResult memory_direction(const Vector& cur_x, const SubproblemSolution& cur,
                                 const Jacobian& jf, const DirectionState& state,
                                 const MmgParams& params) {
  DirectionResult out;
  out.gamma = compute_gamma(state, cur_x, cur.v, params);
  out.d = out.gamma * cur.v;
  if (state.k > 0) {
    const int n_k = static_cast<int>(state.history.size());
    const double psi_v = psi(jf, cur.v);
    const double jf_norm = row_max_norm(jf);
    out.betas.reserve(n_k);
    for (int j = 0; j < n_k; ++j) {
      const Vector& d_prev = state.history[j];
      const double phi =
          compute_phi(psi(jf, d_prev), jf_norm, d_prev.norm(), out.gamma, params.zeta);
      const double beta = compute_beta(psi_v, n_k, phi);
      out.betas.push_back(beta);
      out.d += beta * d_prev;
    }
  }
  if (psi(jf, out.d) >= 1e-12)
    throw ContractViolation("memory_direction: update produced a non-descent direction");
  return out;
}

DirectionResult baseline_direction(CgKind kind, const SubproblemSolution& cur, const Jacobian& jf,
                                   const DirectionState& state) {
  DirectionResult out;
  out.d = cur.v;
  if (kind == CgKind::SD || state.k == 0) return out;

  const Vector& d_prev = state.history.front();
  const double psi_v = psi(jf, cur.v);
  double beta = 0;
  switch (kind) {
    case CgKind::FR:
      beta = state.prev_psi_v == 0.0 ? 0.0 : psi_v / state.prev_psi_v;
      break;
    case CgKind::CD:
      beta = state.prev_psi_d == 0.0 ? 0.0 : psi_v / state.prev_psi_d;
      break;
    case CgKind::HS: {
      const double denom = psi(jf, d_prev) - state.prev_psi_d;
      beta = denom == 0.0 ? 0.0 : std::max(0.0, (psi_v - state.prev_psi_v) / denom);
      break;
    }
    case CgKind::SD:
      break;
  }
  if (beta != 0.0) {
    Vector d = cur.v + beta * d_prev;
    // Restart: the one-step combination carries no descent guarantee, so
    // fall back to the steepest direction whenever it stops being one.
    if (psi(jf, d) < 0) {
      out.d = std::move(d);
      out.betas.push_back(beta);
    } else {
      out.betas.push_back(0.0);
    }
  } else {
    out.betas.push_back(0.0);
  }
  return out;
}

}  // namespace momograd

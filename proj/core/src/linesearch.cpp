#include "momograd/linesearch.hpp"

#include <cmath>

namespace momograd {

ArmijoResult armijo_backtrack(const MultiObjectiveProblem& problem, const Vector& x,
                              const Vector& fx, const Vector& d, double psi_xd,
                              const LineSearchConfig& cfg) {
  const double d_norm_sq = d.squaredNorm();
  if (d_norm_sq == 0.0) throw std::invalid_argument("armijo_backtrack: zero direction");
  if (!(psi_xd < 0.0))
    throw std::invalid_argument("armijo_backtrack: not a descent direction (psi >= 0)");

  double alpha =
      cfg.init == LineSearchConfig::Init::TauK ? -psi_xd / d_norm_sq : 1.0;
  ArmijoResult res;
  for (int i = 0; i < cfg.max_backtracks; ++i) {
    Vector trial = problem.eval(x + alpha * d);
    ++res.f_evals;
    const double allowed = cfg.rho * alpha * psi_xd;
    bool ok = trial.size() == fx.size() && trial.allFinite();
    for (Eigen::Index c = 0; ok && c < fx.size(); ++c) {
      if (!(trial[c] <= fx[c] + allowed)) ok = false;
    }
    if (ok) {
      res.accepted = true;
      res.alpha = alpha;
      res.fx_new = std::move(trial);
      return res;
    }
    alpha *= cfg.delta;
  }
  return res;
}

double lipschitz_step(double psi_xd, double d_norm_sq, double lipschitz_L) {
  if (lipschitz_L <= 0.0) throw std::invalid_argument("lipschitz_step: L must be positive");
  if (d_norm_sq <= 0.0) throw std::invalid_argument("lipschitz_step: zero direction");
  if (!(psi_xd < 0.0))
    throw std::invalid_argument("lipschitz_step: not a descent direction (psi >= 0)");
  return -psi_xd / (2.0 * lipschitz_L * d_norm_sq);
}

}  // namespace momograd

#include "momograd/subproblem.hpp"

#include <algorithm>
#include <cmath>

namespace momograd {

Vector project_to_simplex(const Vector& u) {
  const Eigen::Index m = u.size();
  if (m == 0) throw std::invalid_argument("project_to_simplex: empty vector");
  std::vector<double> sorted(u.data(), u.data() + m);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0;
  double tau = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    running += sorted[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0) tau = candidate;
  }
  return (u.array() - tau).cwiseMax(0.0).matrix();
}

namespace {

/// Gradient-mapping residual with unit step: zero exactly at KKT points of
/// min q over the simplex.
double residual(const Eigen::MatrixXd& gram, const Vector& lambda) {
  const Vector grad = 2.0 * (gram * lambda);
  return (lambda - project_to_simplex(lambda - grad)).lpNorm<Eigen::Infinity>();
}

SubproblemSolution assemble(const Jacobian& jf, const Eigen::MatrixXd& gram, Vector lambda,
                            int iters) {
  SubproblemSolution s;
  s.kkt_residual = gram.size() == 0 ? 0.0 : residual(gram, lambda);
  s.lambda = std::move(lambda);
  s.v = -(jf.transpose() * s.lambda);
  s.theta = psi(jf, s.v) + 0.5 * s.v.squaredNorm();
  s.inner_iterations = iters;
  return s;
}

}  // namespace

SubproblemSolution solve_dual(const Jacobian& jf, const SubproblemOptions& opts,
                              std::vector<double>* objective_log) {
  const Eigen::Index m = jf.rows();
  if (m == 0) throw std::invalid_argument("solve_dual: empty Jacobian");

  if (m == 1) return assemble(jf, Eigen::MatrixXd(), Vector::Ones(1), 0);

  const Eigen::MatrixXd gram = jf * jf.transpose();

  if (m == 2) {
    // One-dimensional quadratic in the weight on the first gradient:
    // argmin_t ||t g1 + (1 - t) g2||^2 clamped to [0, 1].
    const double denom = gram(0, 0) - 2.0 * gram(0, 1) + gram(1, 1);  // ||g1 - g2||^2
    double t = 0.5;
    if (denom > 0) t = std::clamp((gram(1, 1) - gram(0, 1)) / denom, 0.0, 1.0);
    Vector lambda(2);
    lambda << t, 1.0 - t;
    return assemble(jf, gram, std::move(lambda), 0);
  }

  Vector lambda = Vector::Constant(m, 1.0 / static_cast<double>(m));
  const double lipschitz = 2.0 * gram.norm();  // Frobenius bound, >= Lipschitz(grad q)
  if (lipschitz == 0.0) {
    // All gradients vanish; every lambda is optimal and v = 0.
    return assemble(jf, gram, std::move(lambda), 0);
  }

  const double step = 1.0 / lipschitz;
  if (objective_log) objective_log->push_back(lambda.dot(gram * lambda));
  int iters = 0;
  while (iters < opts.max_iterations) {
    const Vector grad = 2.0 * (gram * lambda);
    Vector next = project_to_simplex(lambda - step * grad);
    const double moved = (next - lambda).lpNorm<Eigen::Infinity>();
    lambda = std::move(next);
    ++iters;
    if (objective_log) objective_log->push_back(lambda.dot(gram * lambda));
    if (moved <= opts.tol) break;
  }
  return assemble(jf, gram, std::move(lambda), iters);
}

}  // namespace momograd

#include "momograd/solver.hpp"

#include "momograd/problems.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <cmath>

using namespace momograd;

namespace {

// F = (x^2 - 4, (x - 1)^2): convex pair whose critical set is [0, 1] and
// whose Jacobian is 2-Lipschitz in the row-max norm.
MultiObjectiveProblem quadratic_pair() {
  MultiObjectiveProblem p;
  p.name = "pair";
  p.n = 1;
  p.m = 2;
  p.eval = [](const Vector& x) {
    Vector out(2);
    out << x[0] * x[0] - 4, (x[0] - 1) * (x[0] - 1);
    return out;
  };
  p.jac = [](const Vector& x) {
    Jacobian out(2, 1);
    out << 2 * x[0], 2 * (x[0] - 1);
    return out;
  };
  p.lower = Vector::Constant(1, -5);
  p.upper = Vector::Constant(1, 5);
  p.convex = true;
  return p;
}

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

void check_counter_contract(const SolverTrace& trace) {
  int f = 0, jac = 0;
  for (const auto& r : trace.iterations) {
    f += r.f_evals;
    jac += r.jac_evals;
  }
  CHECK(f == trace.total_f_evals);
  CHECK(jac == trace.total_jac_evals);
  CHECK(jac == trace.steps() + 1);
}

}  // namespace

TEST_CASE("every method solves the quadratic pair from x = 3") {
  const auto p = quadratic_pair();
  for (auto method : {Method::MmgI, Method::MmgII, Method::SD, Method::FR, Method::CD,
                      Method::HS}) {
    CAPTURE(to_string(method));
    SolverConfig cfg;
    cfg.method = method;
    cfg.ls.lipschitz_L = 2.0;
    const auto trace = solve(p, vec1(3), cfg);
    CHECK(trace.status == TerminalStatus::Critical);
    CHECK(std::abs(trace.terminal().theta) <= cfg.eps_theta);
    const double x_term = trace.terminal().x[0];
    CHECK(x_term >= -1e-3);
    CHECK(x_term <= 1 + 1e-3);
    CHECK_FALSE(trace.terminal().stepped);
    check_counter_contract(trace);

    // |theta| <= eps forces ||v|| into the sqrt(2 eps) ball.
    CHECK(trace.terminal().v.norm() <= 2.0 * std::sqrt(cfg.eps_theta));
  }
}

TEST_CASE("a critical start terminates with zero steps") {
  const auto p = quadratic_pair();
  SolverConfig cfg;
  const auto trace = solve(p, vec1(0.5), cfg);
  CHECK(trace.status == TerminalStatus::Critical);
  CHECK(trace.steps() == 0);
  REQUIRE(trace.iterations.size() == 1);
  CHECK(trace.total_f_evals == 1);
  CHECK(trace.total_jac_evals == 1);
}

TEST_CASE("objective values never increase along a run") {
  const auto p = quadratic_pair();
  SplitMix64 rng(3);
  for (auto method : {Method::MmgI, Method::SD, Method::FR, Method::CD, Method::HS}) {
    SolverConfig cfg;
    cfg.method = method;
    const auto trace = solve(p, vec1(rng.uniform(-5, 5)), cfg);
    REQUIRE(trace.status == TerminalStatus::Critical);
    for (std::size_t i = 1; i < trace.iterations.size(); ++i) {
      const auto& prev = trace.iterations[i - 1].fx;
      const auto& next = trace.iterations[i].fx;
      for (int c = 0; c < 2; ++c) CHECK(next[c] <= prev[c] + 1e-14);
    }
    check_counter_contract(trace);
  }
}

TEST_CASE("iteration budget surfaces as max_iters with a terminal record") {
  // The n = 50 quadratic pair contracts slowly (unit steps shrink the
  // iterate by a 1 - O(1/n) factor), so two iterations cannot finish it.
  const auto p = make_problem("JOS1a");
  SolverConfig cfg;
  cfg.max_iters = 2;
  const auto trace = solve(p, Vector::Constant(p.n, 4.5), cfg);
  CHECK(trace.status == TerminalStatus::MaxIters);
  CHECK(trace.steps() == 2);
  CHECK_FALSE(trace.terminal().stepped);
  check_counter_contract(trace);
}

TEST_CASE("an unevaluable start reports eval_error instead of throwing") {
  MultiObjectiveProblem p = quadratic_pair();
  p.eval = [](const Vector& x) {
    Vector out(2);
    out << std::sqrt(x[0]), x[0];  // NaN for x < 0
    return out;
  };
  const auto trace = solve(p, vec1(-1), SolverConfig{});
  CHECK(trace.status == TerminalStatus::EvalError);
  CHECK(trace.iterations.empty());
  CHECK(trace.total_f_evals == 1);
  CHECK(trace.total_jac_evals == 0);
}

TEST_CASE("a line search that cannot make progress fails the run") {
  MultiObjectiveProblem p;
  p.name = "inconsistent";
  p.n = 1;
  p.m = 1;
  // Constant zero objective with a fake nonzero gradient: the Armijo
  // threshold 0 + rho * alpha * psi is exactly negative, so no trial passes.
  p.eval = [](const Vector&) -> Vector { return Vector::Zero(1); };
  p.jac = [](const Vector&) -> Jacobian { return Jacobian::Constant(1, 1, 1.0); };

  SolverConfig cfg;
  const auto trace = solve(p, vec1(0), cfg);
  CHECK(trace.status == TerminalStatus::LineSearchFail);
  CHECK(trace.steps() == 0);
  CHECK(trace.total_f_evals == 1 + cfg.ls.max_backtracks);
  CHECK_FALSE(trace.terminal().stepped);
}

TEST_CASE("manual init + step loop reproduces solve") {
  const auto p = quadratic_pair();
  SolverConfig cfg;
  cfg.method = Method::MmgI;

  auto state = init_state(p, vec1(3), cfg);
  while (step(p, state, cfg)) {
  }
  const auto direct = solve(p, vec1(3), cfg);

  REQUIRE(state.trace.iterations.size() == direct.iterations.size());
  CHECK(state.trace.status == direct.status);
  CHECK(state.trace.total_f_evals == direct.total_f_evals);
  for (std::size_t i = 0; i < direct.iterations.size(); ++i) {
    CHECK((state.trace.iterations[i].x - direct.iterations[i].x).norm() == 0.0);
    CHECK(state.trace.iterations[i].alpha == direct.iterations[i].alpha);
  }
}

TEST_CASE("configuration errors are rejected before any evaluation") {
  const auto p = quadratic_pair();
  CHECK_THROWS_AS(solve(p, Vector::Zero(2), SolverConfig{}), std::invalid_argument);
  SolverConfig cfg;
  cfg.method = Method::MmgII;  // needs lipschitz_L > 0
  CHECK_THROWS_AS(solve(p, vec1(3), cfg), std::invalid_argument);
}

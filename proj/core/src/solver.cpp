#include "momograd/solver.hpp"

#include <cmath>
#include <limits>

namespace momograd {

const char* to_string(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::Critical: return "critical";
    case TerminalStatus::MaxIters: return "max_iters";
    case TerminalStatus::LineSearchFail: return "linesearch_fail";
    case TerminalStatus::EvalError: return "eval_error";
  }
  return "unknown";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::MmgI: return "mmg-i";
    case Method::MmgII: return "mmg-ii";
    case Method::SD: return "sd";
    case Method::FR: return "fr";
    case Method::CD: return "cd";
    case Method::HS: return "hs";
  }
  return "unknown";
}

namespace {

/// Record fields shared by stepped and terminal rows. Attribution
/// convention: each record claims the one Jacobian evaluated at its iterate
/// and, for k = 0, the initial objective evaluation.
IterationRecord snapshot(const SolveState& state) {
  IterationRecord rec;
  rec.k = state.dir.k;
  rec.x = state.x;
  rec.fx = state.fx;
  rec.v = state.sub.v;
  rec.theta = state.sub.theta;
  rec.psi_v = state.psi_v;
  rec.f_evals = state.dir.k == 0 ? 1 : 0;
  rec.jac_evals = 1;
  return rec;
}

void finish(SolveState& state, TerminalStatus status, std::string message, IterationRecord rec) {
  state.trace.status = status;
  state.trace.message = std::move(message);
  state.trace.iterations.push_back(std::move(rec));
  state.finished = true;
}

DirectionResult pick_direction(const SolveState& state, const SolverConfig& cfg) {
  switch (cfg.method) {
    case Method::MmgI:
    case Method::MmgII:
      return memory_direction(state.x, state.sub, state.jf, state.dir, cfg.mmg);
    case Method::SD:
      return baseline_direction(CgKind::SD, state.sub, state.jf, state.dir);
    case Method::FR:
      return baseline_direction(CgKind::FR, state.sub, state.jf, state.dir);
    case Method::CD:
      return baseline_direction(CgKind::CD, state.sub, state.jf, state.dir);
    case Method::HS:
      return baseline_direction(CgKind::HS, state.sub, state.jf, state.dir);
  }
  throw std::logic_error("pick_direction: unhandled method");
}

/// A finite Jacobian does not guarantee a finite subproblem: squaring huge
/// gradient entries overflows the Gram matrix and NaN would then slip past
/// every sign test downstream. Treat it like any other evaluation failure.
void check_subproblem_finite(const MultiObjectiveProblem& problem, const SolveState& state) {
  if (!state.sub.v.allFinite() || !std::isfinite(state.sub.theta) ||
      !std::isfinite(state.psi_v))
    throw EvalError(problem.name + ": descent subproblem overflowed at the current iterate");
}

void init_state_into(const MultiObjectiveProblem& problem, const Vector& x0,
                     const SolverConfig& cfg, SolveState& state) {
  if (x0.size() != problem.n) throw std::invalid_argument("init_state: x0 has wrong dimension");
  if (cfg.method == Method::MmgII && cfg.ls.lipschitz_L <= 0)
    throw std::invalid_argument("init_state: the fixed-step rule needs ls.lipschitz_L > 0");
  state.x = x0;
  state.trace.total_f_evals += 1;
  state.fx = eval_checked(problem, state.x);
  state.trace.total_jac_evals += 1;
  state.jf = jac_checked(problem, state.x);
  state.sub = solve_dual(state.jf, cfg.subproblem);
  state.psi_v = psi(state.jf, state.sub.v);
  check_subproblem_finite(problem, state);
}

}  // namespace

SolveState init_state(const MultiObjectiveProblem& problem, const Vector& x0,
                      const SolverConfig& cfg) {
  SolveState state;
  init_state_into(problem, x0, cfg, state);
  return state;
}

bool step(const MultiObjectiveProblem& problem, SolveState& state, const SolverConfig& cfg) {
  if (state.finished) return false;

  if (is_critical(state.sub, cfg.eps_theta)) {
    finish(state, TerminalStatus::Critical, "", snapshot(state));
    return false;
  }
  if (state.dir.k >= cfg.max_iters) {
    finish(state, TerminalStatus::MaxIters, "iteration budget exhausted", snapshot(state));
    return false;
  }

  IterationRecord rec = snapshot(state);
  DirectionResult dres = pick_direction(state, cfg);
  rec.stepped = true;
  rec.d = dres.d;
  rec.gamma = dres.gamma;
  rec.betas = dres.betas;
  rec.psi_d = psi(state.jf, dres.d);

  double alpha = 0;
  Vector fx_new;
  if (cfg.method == Method::MmgII) {
    alpha = lipschitz_step(rec.psi_d, dres.d.squaredNorm(), cfg.ls.lipschitz_L);
    rec.f_evals += 1;
    state.trace.total_f_evals += 1;
    try {
      fx_new = eval_checked(problem, state.x + alpha * dres.d);
    } catch (const EvalError& err) {
      rec.stepped = false;
      finish(state, TerminalStatus::EvalError, err.what(), std::move(rec));
      return false;
    }
  } else {
    ArmijoResult ls = armijo_backtrack(problem, state.x, state.fx, dres.d, rec.psi_d, cfg.ls);
    rec.f_evals += ls.f_evals;
    state.trace.total_f_evals += ls.f_evals;
    if (!ls.accepted) {
      rec.stepped = false;
      finish(state, TerminalStatus::LineSearchFail,
             "no acceptable step within the backtracking budget", std::move(rec));
      return false;
    }
    alpha = ls.alpha;
    fx_new = std::move(ls.fx_new);
  }
  rec.alpha = alpha;

  const int memory =
      (cfg.method == Method::MmgI || cfg.method == Method::MmgII) ? cfg.mmg.memory : 1;
  state.dir.advance(state.x, state.sub.v, state.psi_v, dres.d, rec.psi_d, memory);
  state.x += alpha * dres.d;
  state.fx = std::move(fx_new);
  state.trace.iterations.push_back(std::move(rec));

  state.trace.total_jac_evals += 1;
  try {
    state.jf = jac_checked(problem, state.x);
    state.sub = solve_dual(state.jf, cfg.subproblem);
    state.psi_v = psi(state.jf, state.sub.v);
    check_subproblem_finite(problem, state);
  } catch (const EvalError& err) {
    IterationRecord term;
    term.k = state.dir.k;
    term.x = state.x;
    term.fx = state.fx;
    term.theta = std::numeric_limits<double>::quiet_NaN();
    term.psi_v = std::numeric_limits<double>::quiet_NaN();
    term.jac_evals = 1;
    finish(state, TerminalStatus::EvalError, err.what(), std::move(term));
    return false;
  }
  return true;
}

SolverTrace solve(const MultiObjectiveProblem& problem, const Vector& x0,
                  const SolverConfig& cfg) {
  SolveState state;
  try {
    init_state_into(problem, x0, cfg, state);
  } catch (const EvalError& err) {
    state.trace.status = TerminalStatus::EvalError;
    state.trace.message = err.what();
    return state.trace;
  }
  while (step(problem, state, cfg)) {
  }
  return state.trace;
}

}  // namespace momograd

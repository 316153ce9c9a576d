#pragma once

#include "momograd/directions.hpp"
#include "momograd/linesearch.hpp"

#include <string>
#include <vector>

namespace momograd {

enum class Method {
  MmgI,   ///< memory-gradient direction + Armijo backtracking
  MmgII,  ///< memory-gradient direction + fixed Lipschitz step
  SD,     ///< steepest descent d = v
  FR,     ///< Fletcher-Reeves-shaped one-step baseline
  CD,     ///< conjugate-descent-shaped one-step baseline
  HS,     ///< Hestenes-Stiefel-shaped one-step baseline
};

enum class TerminalStatus { Critical, MaxIters, LineSearchFail, EvalError };

const char* to_string(TerminalStatus s);
const char* to_string(Method m);

struct SolverConfig {
  Method method = Method::MmgI;
  MmgParams mmg;
  LineSearchConfig ls;
  double eps_theta = 1e-6;  ///< stop once |theta(x^k)| falls to this
  int max_iters = 10000;
  SubproblemOptions subproblem;
};

/// One row of a run trace. Stepped records carry the direction and step
/// taken from x; the final record of every trace is the terminal iterate
/// with stepped = false and no direction data.
struct IterationRecord {
  int k = 0;
  Vector x;
  Vector fx;
  Vector v;
  double theta = 0;
  double psi_v = 0;
  bool stepped = false;
  Vector d;
  double psi_d = 0;
  double gamma = 0;
  std::vector<double> betas;
  double alpha = 0;
  int f_evals = 0;    ///< objective evaluations consumed at this iteration
  int jac_evals = 0;  ///< Jacobian evaluations consumed at this iteration
};

struct SolverTrace {
  std::vector<IterationRecord> iterations;
  TerminalStatus status = TerminalStatus::EvalError;
  std::string message;  ///< diagnostic detail for failure statuses
  int total_f_evals = 0;
  int total_jac_evals = 0;

  /// Number of accepted steps; the terminal record does not count.
  int steps() const { return static_cast<int>(iterations.size()) - (iterations.empty() ? 0 : 1); }
  const IterationRecord& terminal() const { return iterations.back(); }
};

/// Mid-run state: everything known about the current iterate. init_state
/// followed by step until it returns false reproduces solve exactly.
struct SolveState {
  Vector x;
  Vector fx;
  Jacobian jf;
  SubproblemSolution sub;
  double psi_v = 0;
  DirectionState dir;
  SolverTrace trace;
  bool finished = false;
};

/// Evaluate F, JF and the subproblem at x0. Throws EvalError if the initial
/// point cannot be evaluated.
SolveState init_state(const MultiObjectiveProblem& problem, const Vector& x0,
                      const SolverConfig& cfg);

/// Run one iteration: termination test, direction, step length, iterate
/// update, then the subproblem at the new point. Returns false once the run
/// is finished (state.trace.status holds the verdict).
bool step(const MultiObjectiveProblem& problem, SolveState& state, const SolverConfig& cfg);

/// Drive init_state + step to termination. Evaluation failures at the
/// initial point come back as a trace with status EvalError and no
/// iterations rather than as an exception.
SolverTrace solve(const MultiObjectiveProblem& problem, const Vector& x0,
                  const SolverConfig& cfg);

}  // namespace momograd

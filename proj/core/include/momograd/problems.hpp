#pragma once

#include "momograd/types.hpp"

#include <cstdint>
#include <vector>

namespace momograd {

/// Catalog row describing a benchmark problem. `implemented` marks entries
/// whose analytic form ships with the library; the remaining rows are kept
/// so the full suite metadata can be listed and exported.
struct ProblemInfo {
  std::string name;
  std::string source;  ///< literature reference the definition follows
  int n = 0;
  int m = 0;
  bool convex = false;
  Vector lower;
  Vector upper;
  bool implemented = false;
};

/// Every catalog row, implemented or not, in a stable order.
const std::vector<ProblemInfo>& catalog();

/// Names of the implemented problems, catalog order.
std::vector<std::string> problem_names();

/// Catalog lookup; nullptr when the name is unknown.
const ProblemInfo* find_info(const std::string& name);

/// Instantiate an implemented problem. Throws std::invalid_argument for
/// unknown names and for catalog entries without an implementation.
MultiObjectiveProblem make_problem(const std::string& name);

/// `count` starting points uniform in the problem box. Each index draws
/// from its own substream keyed by (seed, problem name, index), so any
/// subset of the starts can be regenerated independently and concurrent
/// callers cannot perturb the sequence.
std::vector<Vector> sample_starts(const MultiObjectiveProblem& problem, int count,
                                  std::uint64_t seed);

/// Objective scaling r_i = 1 / max{1, ||grad F_i(x0)||_inf}, applied to the
/// objective and its gradient row alike. Positive per-objective scaling
/// leaves the Pareto-critical set untouched while flattening wildly
/// different objective magnitudes.
struct ScaledProblem {
  MultiObjectiveProblem problem;
  Vector factors;
};
ScaledProblem scale_at(const MultiObjectiveProblem& base, const Vector& x0);

}  // namespace momograd

#pragma once

#include "momograd/problems.hpp"
#include "momograd/solver.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace momograd {

/// Outcome summary of one (problem, method, start) run. f_terminal holds
/// the terminal objective vector of the *base* (unscaled) problem so fronts
/// pooled across starts stay comparable; theta is the stopping quantity of
/// the problem actually solved.
struct RunRecord {
  std::string problem;
  std::string method;
  int start = 0;
  std::uint64_t seed = 0;
  TerminalStatus status = TerminalStatus::EvalError;
  int iterations = 0;
  int f_evals = 0;
  int jac_evals = 0;
  double theta = std::numeric_limits<double>::quiet_NaN();
  double walltime_ms = 0;
  Vector f_terminal;  ///< empty when the initial point failed to evaluate

  bool solved() const { return status == TerminalStatus::Critical; }
};

/// Objective vectors surviving nondominated filtering, tagged by the solver
/// that produced them ("pool" for the union front).
struct FrontSet {
  std::string tag;
  std::vector<Vector> points;
};

/// Nondominated subset: points no other point dominates, exact duplicates
/// collapsed to their first occurrence. Result order follows the input.
std::vector<Vector> pareto_filter(const std::vector<Vector>& points);

/// |front ∩ pooled| / |pooled| with membership up to inf-norm match_tol.
/// The profile-ready value is the reciprocal (purity 0 = profile failure).
double purity(const FrontSet& front, const FrontSet& pooled, double match_tol = 1e-8);

/// Spread statistic: standard deviation of the L1 nearest-neighbor
/// distances within the front (self-distances excluded). Undefined for
/// fronts of fewer than two points.
std::optional<double> spacing(const FrontSet& front);

constexpr double kProfileFailure = std::numeric_limits<double>::quiet_NaN();

struct ProfileCurve {
  std::string solver;
  std::vector<double> tau;  ///< sorted distinct finite performance ratios
  std::vector<double> rho;  ///< fraction of problems with ratio <= tau
};

struct ProfileResult {
  std::vector<ProfileCurve> curves;
  int dropped_problems = 0;  ///< rows where every solver failed
};

/// Dolan-More profile over measures[problem][solver]; entries equal to
/// failure_marker (or NaN) never count as solved.
ProfileResult performance_profile(const std::vector<std::vector<double>>& measures,
                                  const std::vector<std::string>& solvers,
                                  double failure_marker = kProfileFailure);

/// How per-(problem, solver) performance measures collapse across starts.
enum class Aggregate {
  Median,    ///< median over successful runs (default)
  Mean,      ///< mean over successful runs
  PerStart,  ///< every (problem, start) pair becomes its own profile row
};

enum class MeasureKind { Iterations, FEvals };

/// Build the profile measure matrix from run records. Row labels come back
/// in `row_names` (problem names, or problem#start under PerStart); columns
/// follow `methods`. Unsuccessful (problem, solver) cells get the failure
/// marker.
std::vector<std::vector<double>> aggregate_measure(const std::vector<RunRecord>& records,
                                                   const std::vector<std::string>& problems,
                                                   const std::vector<std::string>& methods,
                                                   MeasureKind kind, Aggregate how,
                                                   std::vector<std::string>* row_names = nullptr);

struct MethodSpec {
  std::string label;
  SolverConfig config;
};

struct ExperimentPlan {
  std::vector<std::string> problems;  ///< registry names
  std::vector<MethodSpec> methods;
  int starts = 10;
  std::uint64_t seed = 0;
  bool scale = true;  ///< apply the gradient scaling at each start
  int jobs = 1;       ///< worker threads; any value yields identical records
};

/// Per-run observer, invoked with the finished record and full trace.
/// Called from worker threads; the callback must be thread-safe. Traces are
/// not retained by the driver, so memory stays bounded.
using TraceSink = std::function<void(const RunRecord&, const SolverTrace&)>;

/// Run every (problem, method, start) triple. Starts are shared across
/// methods (paired comparison) and each run is independent, so records come
/// back in a fixed order no matter how the pool schedules them. Per-run
/// failures are recorded, never thrown.
std::vector<RunRecord> run_experiment(const ExperimentPlan& plan, const TraceSink& sink = {});

/// Rebuild per-solver fronts from records: terminal objective vectors of
/// successful runs, nondominated-filtered, grouped by (problem, method).
FrontSet front_of(const std::vector<RunRecord>& records, const std::string& problem,
                  const std::string& method);

// ---- CSV interfaces ----------------------------------------------------

/// Parse failure carrying the 1-based line number of the offending row.
class CsvError : public std::runtime_error {
 public:
  CsvError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_csv(std::istream& in);

void write_front_csv(std::ostream& out, const FrontSet& front);
FrontSet read_front_csv(std::istream& in, const std::string& tag);

void write_profiles_csv(std::ostream& out, const ProfileResult& profile);

/// Fixed-format floating-point serialization used by every CSV writer;
/// shortest representation that round-trips a double.
std::string format_double(double value);

}  // namespace momograd

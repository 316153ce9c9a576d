#pragma once

#include "momograd/bench.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace momograd {

/// Config rejected during parsing; line 0 means the problem is semantic
/// rather than tied to a specific line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Everything a benchmark invocation needs, loadable from a flat key=value
/// file. parse_config(serialize_config(c)) == c for every valid c.
struct ExperimentConfig {
  std::vector<std::string> problems;
  std::vector<std::string> methods;  ///< tokens, see parse_method
  int starts = 10;
  std::uint64_t seed = 0;
  std::string output = "out";
  bool scale = true;
  double eps_theta = 1e-6;
  int max_iters = 10000;
  double rho = 1e-4;    ///< Armijo slope fraction
  double delta = 0.5;   ///< backtracking shrink factor
  /// First trial step: "unit" starts backtracking at 1 (the protocol the
  /// reported benchmark numbers use; step length then depends on the scale
  /// of d, which is where the memory methods gain), "tau" starts at
  /// -psi/||d||^2 (scale-invariant, used by the per-step bound analyses).
  std::string init_mode = "unit";
  double zeta = 1e-4;   ///< memory-weight offset
  double lipschitz = 0; ///< gradient Lipschitz constant, needed by mmg-ii
  std::string aggregate = "median";  ///< "median", "mean", or "per-start"

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_string(const std::string& text);
std::string serialize_config(const ExperimentConfig& config);

/// Translate a method token into a runnable spec. Grammar:
///   sd | fr | cd | hs          steepest descent / conjugate baselines
///   mmg-i1[:N]                 memory direction, constant gamma (N def. 5)
///   mmg-i2[:N]                 memory direction, quotient gamma (N def. 3)
///   mmg-ii[:N]                 Lipschitz-step variant (N def. 5)
/// Common knobs (rho, delta, eps_theta, ...) come from the config.
MethodSpec parse_method(const std::string& token, const ExperimentConfig& config);

/// Expand a parsed config into the bench driver's plan.
ExperimentPlan make_plan(const ExperimentConfig& config, int jobs);

Aggregate aggregate_of(const ExperimentConfig& config);

}  // namespace momograd

#include "momograd/bench.hpp"
#include "momograd/experiment_config.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

namespace fs = std::filesystem;
using namespace momograd;

namespace {

int exit_of(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::Critical:
      return 0;
    case TerminalStatus::MaxIters:
      return 2;
    case TerminalStatus::LineSearchFail:
      return 3;
    case TerminalStatus::EvalError:
      return 4;
  }
  return 4;
}

std::string join_components(const Vector& v, char sep = ';') {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_double(v[i]);
  }
  return out;
}

void write_trace_file(std::ostream& out, const SolverTrace& trace) {
  out << "# status: " << to_string(trace.status) << '\n';
  if (!trace.message.empty()) out << "# message: " << trace.message << '\n';
  out << "k,stepped,theta,psi_v,psi_d,gamma,alpha,f_evals,jac_evals,x,F,d\n";
  for (const auto& r : trace.iterations) {
    out << r.k << ',' << (r.stepped ? 1 : 0) << ',' << format_double(r.theta) << ','
        << format_double(r.psi_v) << ',' << format_double(r.stepped ? r.psi_d : 0.0) << ','
        << format_double(r.stepped ? r.gamma : 0.0) << ','
        << format_double(r.stepped ? r.alpha : 0.0) << ',' << r.f_evals << ',' << r.jac_evals
        << ',' << join_components(r.x) << ',' << join_components(r.fx) << ','
        << (r.stepped ? join_components(r.d) : std::string()) << '\n';
  }
}

std::string front_filename(const std::string& problem, const std::string& method) {
  return problem + "__" + method + ".csv";
}

std::uint64_t seed_override(std::uint64_t fallback) {
  const char* env = std::getenv("MOMOGRAD_SEED");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') throw ConfigError(0, "MOMOGRAD_SEED is not an integer");
  return static_cast<std::uint64_t>(v);
}

struct SolveArgs {
  std::string problem;
  std::string method = "mmg-i";
  std::uint64_t seed = 0;
  std::string x0_text;
  std::string trace_path;
  bool scale = false;
  ExperimentConfig knobs;  ///< carries the shared solver knobs
};

int run_solve(const SolveArgs& args) {
  MultiObjectiveProblem problem;
  MethodSpec spec{};
  try {
    problem = make_problem(args.problem);
    spec = parse_method(args.method, args.knobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  }

  Vector x0;
  if (!args.x0_text.empty()) {
    std::vector<double> values;
    std::size_t pos = 0;
    const std::string& text = args.x0_text;
    while (pos <= text.size()) {
      const std::size_t next = text.find(',', pos);
      const std::string item = text.substr(pos, next - pos);
      char* end = nullptr;
      const double v = std::strtod(item.c_str(), &end);
      if (end == item.c_str() || *end != '\0') {
        std::cerr << "error: bad x0 component '" << item << "'\n";
        return 64;
      }
      values.push_back(v);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (static_cast<int>(values.size()) != problem.n) {
      std::cerr << "error: x0 has " << values.size() << " components, " << problem.name
                << " needs " << problem.n << '\n';
      return 64;
    }
    x0 = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
  } else {
    x0 = sample_starts(problem, 1, args.seed).front();
  }

  Vector factors = Vector::Ones(problem.m);
  if (args.scale) {
    try {
      ScaledProblem scaled = scale_at(problem, x0);
      factors = scaled.factors;
      problem = std::move(scaled.problem);
    } catch (const EvalError& e) {
      std::cerr << "error: scaling failed: " << e.what() << '\n';
      return 4;
    }
  }

  const SolverTrace trace = solve(problem, x0, spec.config);
  if (!args.trace_path.empty()) {
    std::ofstream out(args.trace_path);
    if (!out) {
      std::cerr << "error: cannot write " << args.trace_path << '\n';
      return 64;
    }
    write_trace_file(out, trace);
  }

  std::cout << "problem:    " << args.problem << '\n';
  std::cout << "method:     " << args.method << '\n';
  std::cout << "status:     " << to_string(trace.status) << '\n';
  if (!trace.message.empty()) std::cout << "detail:     " << trace.message << '\n';
  std::cout << "iterations: " << trace.steps() << '\n';
  std::cout << "f_evals:    " << trace.total_f_evals << '\n';
  std::cout << "jac_evals:  " << trace.total_jac_evals << '\n';
  if (!trace.iterations.empty()) {
    const auto& term = trace.terminal();
    std::cout << "theta:      " << format_double(term.theta) << '\n';
    std::cout << "x:          " << join_components(term.x, ' ') << '\n';
    std::cout << "F:          " << join_components((term.fx.array() / factors.array()).matrix(), ' ')
              << '\n';
  }
  return exit_of(trace.status);
}

struct BenchArgs {
  std::string config_path;
  int jobs = 0;
  std::string output_override;
};

int run_bench(const BenchArgs& args) {
  ExperimentConfig config;
  try {
    std::ifstream in(args.config_path);
    if (!in) {
      std::cerr << "error: cannot read " << args.config_path << '\n';
      return 64;
    }
    config = parse_config(in);
    config.seed = seed_override(config.seed);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << args.config_path << ": " << e.what() << '\n';
    return 64;
  }
  if (!args.output_override.empty()) config.output = args.output_override;

  ExperimentPlan plan;
  try {
    const int jobs = args.jobs > 0
                         ? args.jobs
                         : std::max(1u, std::thread::hardware_concurrency());
    plan = make_plan(config, jobs);
    for (const auto& name : plan.problems) make_problem(name);  // validate upfront
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  }

  const fs::path outdir(config.output);
  const fs::path frontdir = outdir / "fronts";
  std::error_code ec;
  fs::create_directories(frontdir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << frontdir.string() << '\n';
    return 64;
  }

  const std::vector<RunRecord> records = run_experiment(plan);

  {
    std::ofstream out(outdir / "records.csv");
    write_records_csv(out, records);
  }

  std::vector<std::string> methods;
  for (const auto& m : plan.methods) methods.push_back(m.label);

  int solved = 0;
  for (const auto& r : records) solved += r.solved() ? 1 : 0;

  for (const auto& problem : plan.problems) {
    std::vector<Vector> pool_points;
    for (const auto& method : methods) {
      const FrontSet front = front_of(records, problem, method);
      std::ofstream out(frontdir / front_filename(problem, method));
      write_front_csv(out, front);
      pool_points.insert(pool_points.end(), front.points.begin(), front.points.end());
    }
    FrontSet pool{"pool", pareto_filter(pool_points)};
    std::ofstream out(frontdir / front_filename(problem, "pool"));
    write_front_csv(out, pool);
  }

  const Aggregate how = aggregate_of(config);
  const auto iters = aggregate_measure(records, plan.problems, methods, MeasureKind::Iterations, how);
  const auto fevals = aggregate_measure(records, plan.problems, methods, MeasureKind::FEvals, how);
  {
    std::ofstream out(outdir / "profiles.csv");
    write_profiles_csv(out, performance_profile(iters, methods));
  }
  {
    std::ofstream out(outdir / "profiles_fevals.csv");
    write_profiles_csv(out, performance_profile(fevals, methods));
  }

  std::cout << records.size() << " runs, " << solved << " solved; artifacts in "
            << outdir.string() << '\n';
  if (solved == 0) {
    std::cerr << "error: no run reached a critical point\n";
    return 1;
  }
  return 0;
}

struct MetricsArgs {
  std::string records_path;
  std::string fronts_dir;
  std::string output = ".";
  std::string aggregate = "median";
  std::string measure = "iters";
};

int run_metrics(const MetricsArgs& args) {
  std::vector<RunRecord> records;
  try {
    std::ifstream in(args.records_path);
    if (!in) {
      std::cerr << "error: cannot read " << args.records_path << '\n';
      return 65;
    }
    records = read_records_csv(in);
  } catch (const CsvError& e) {
    std::cerr << "error: " << args.records_path << ": " << e.what() << '\n';
    return 65;
  }

  // Problems and methods in order of first appearance.
  std::vector<std::string> problems, methods;
  for (const auto& r : records) {
    if (std::find(problems.begin(), problems.end(), r.problem) == problems.end())
      problems.push_back(r.problem);
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
      methods.push_back(r.method);
  }

  auto load_front = [&](const std::string& problem, const std::string& method) -> FrontSet {
    const fs::path path = fs::path(args.fronts_dir) / front_filename(problem, method);
    std::ifstream in(path);
    if (!in) return FrontSet{method, {}};
    try {
      return read_front_csv(in, method);
    } catch (const CsvError& e) {
      std::cerr << "error: " << path.string() << ": " << e.what() << '\n';
      throw;
    }
  };

  const fs::path outdir(args.output);
  std::error_code ec;
  fs::create_directories(outdir, ec);

  try {
    std::ofstream purity_out(outdir / "purity.csv");
    std::ofstream spacing_out(outdir / "spacing.csv");
    purity_out << "problem,solver,purity,profile_value\n";
    spacing_out << "problem";
    for (const auto& m : methods) spacing_out << ',' << m;
    spacing_out << '\n';

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& problem : problems) {
      std::vector<FrontSet> fronts;
      std::vector<Vector> pool_points;
      for (const auto& method : methods) {
        fronts.push_back(load_front(problem, method));
        pool_points.insert(pool_points.end(), fronts.back().points.begin(),
                           fronts.back().points.end());
      }
      const FrontSet pool{"pool", pareto_filter(pool_points)};

      spacing_out << problem;
      for (std::size_t i = 0; i < methods.size(); ++i) {
        double pur = nan;
        if (!pool.points.empty()) pur = purity(fronts[i], pool);
        const double profile_value = pur > 0 ? 1.0 / pur : nan;
        purity_out << problem << ',' << methods[i] << ',' << format_double(pur) << ','
                   << format_double(profile_value) << '\n';
        const auto sp = spacing(fronts[i]);
        spacing_out << ',' << format_double(sp ? *sp : nan);
      }
      spacing_out << '\n';
    }
  } catch (const CsvError&) {
    return 65;
  }

  const Aggregate how = args.aggregate == "mean"      ? Aggregate::Mean
                        : args.aggregate == "per-start" ? Aggregate::PerStart
                                                        : Aggregate::Median;
  const MeasureKind kind =
      args.measure == "fevals" ? MeasureKind::FEvals : MeasureKind::Iterations;
  const auto matrix = aggregate_measure(records, problems, methods, kind, how);
  std::ofstream profile_out(outdir / "profiles.csv");
  write_profiles_csv(profile_out, performance_profile(matrix, methods));
  return 0;
}

int run_problems() {
  std::printf("%-8s %4s %2s %-7s %-12s %s\n", "name", "n", "m", "convex", "status", "source");
  for (const auto& info : catalog()) {
    std::printf("%-8s %4d %2d %-7s %-12s %s\n", info.name.c_str(), info.n, info.m,
                info.convex ? "yes" : "no", info.implemented ? "available" : "catalog-only",
                info.source.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiobjective memory-gradient descent toolkit"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "run one method on one problem");
  solve_cmd->add_option("problem", solve_args.problem, "registry problem name")->required();
  solve_cmd->add_option("--method", solve_args.method,
                        "sd | fr | cd | hs | mmg-i[1|2][:N] | mmg-ii[:N]");
  solve_cmd->add_option("--seed", solve_args.seed, "seed for the sampled starting point");
  solve_cmd->add_option("--x0", solve_args.x0_text, "explicit start, comma-separated");
  solve_cmd->add_option("--trace", solve_args.trace_path, "write the per-iteration trace here");
  solve_cmd->add_flag("--scale", solve_args.scale, "apply gradient scaling at the start");
  solve_cmd->add_option("--eps-theta", solve_args.knobs.eps_theta, "criticality tolerance");
  solve_cmd->add_option("--max-iters", solve_args.knobs.max_iters, "iteration cap");
  solve_cmd->add_option("--rho", solve_args.knobs.rho, "Armijo slope fraction");
  solve_cmd->add_option("--delta", solve_args.knobs.delta, "backtracking shrink factor");
  solve_cmd->add_option("--init", solve_args.knobs.init_mode, "first trial step: tau | unit")
      ->check(CLI::IsMember({"tau", "unit"}));
  solve_cmd->add_option("--zeta", solve_args.knobs.zeta, "memory-weight offset");
  solve_cmd->add_option("--lipschitz", solve_args.knobs.lipschitz,
                        "gradient Lipschitz constant (mmg-ii)");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark config");
  bench_cmd->add_option("config", bench_args.config_path, "experiment config file")->required();
  bench_cmd->add_option("--jobs", bench_args.jobs, "worker threads (default: all cores)");
  bench_cmd->add_option("--output", bench_args.output_override, "override the output directory");

  MetricsArgs metrics_args;
  auto* metrics_cmd = app.add_subcommand("metrics", "compute metric tables from artifacts");
  metrics_cmd->add_option("records", metrics_args.records_path, "records.csv path")->required();
  metrics_cmd->add_option("fronts", metrics_args.fronts_dir, "fronts directory")->required();
  metrics_cmd->add_option("--output", metrics_args.output, "directory for metric tables");
  metrics_cmd->add_option("--aggregate", metrics_args.aggregate, "median | mean | per-start")
      ->check(CLI::IsMember({"median", "mean", "per-start"}));
  metrics_cmd->add_option("--measure", metrics_args.measure, "iters | fevals")
      ->check(CLI::IsMember({"iters", "fevals"}));

  auto* problems_cmd = app.add_subcommand("problems", "list the problem registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (bench_cmd->parsed()) return run_bench(bench_args);
    if (metrics_cmd->parsed()) return run_metrics(metrics_args);
    if (problems_cmd->parsed()) return run_problems();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  }
  return 64;
}

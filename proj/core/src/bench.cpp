#include "momograd/bench.hpp"

#include "momograd/core.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

namespace momograd {

std::vector<Vector> pareto_filter(const std::vector<Vector>& points) {
  std::vector<Vector> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < points.size() && !drop; ++j) {
      if (j == i) continue;
      if (dominates(points[j], points[i])) drop = true;
      // Collapse exact duplicates onto the earliest occurrence.
      if (j < i && points[j].size() == points[i].size() &&
          points[j].cwiseEqual(points[i]).all())
        drop = true;
    }
    if (!drop) kept.push_back(points[i]);
  }
  return kept;
}

double purity(const FrontSet& front, const FrontSet& pooled, double match_tol) {
  if (pooled.points.empty()) throw std::invalid_argument("purity: empty pooled front");
  int matched = 0;
  for (const auto& p : pooled.points) {
    for (const auto& q : front.points) {
      if ((p - q).lpNorm<Eigen::Infinity>() <= match_tol) {
        ++matched;
        break;
      }
    }
  }
  return static_cast<double>(matched) / static_cast<double>(pooled.points.size());
}

std::optional<double> spacing(const FrontSet& front) {
  const auto& pts = front.points;
  const std::size_t n = pts.size();
  if (n < 2) return std::nullopt;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == l) continue;
      nearest[l] = std::min(nearest[l], (pts[l] - pts[k]).lpNorm<1>());
    }
  }
  double mean = 0;
  for (double d : nearest) mean += d;
  mean /= static_cast<double>(n);
  double ss = 0;
  for (double d : nearest) ss += (mean - d) * (mean - d);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

ProfileResult performance_profile(const std::vector<std::vector<double>>& measures,
                                  const std::vector<std::string>& solvers,
                                  double failure_marker) {
  const std::size_t ns = solvers.size();
  auto failed = [failure_marker](double o) {
    return std::isnan(o) || o == failure_marker || !(o > 0) || std::isinf(o);
  };

  // Performance ratios; rows where every solver failed are dropped.
  std::vector<std::vector<double>> ratios;
  int dropped = 0;
  for (const auto& row : measures) {
    if (row.size() != ns)
      throw std::invalid_argument("performance_profile: ragged measure matrix");
    double best = std::numeric_limits<double>::infinity();
    for (double o : row) {
      if (!failed(o)) best = std::min(best, o);
    }
    if (std::isinf(best)) {
      ++dropped;
      continue;
    }
    std::vector<double> z(ns);
    for (std::size_t s = 0; s < ns; ++s)
      z[s] = failed(row[s]) ? std::numeric_limits<double>::infinity() : row[s] / best;
    ratios.push_back(std::move(z));
  }

  std::vector<double> taus;
  for (const auto& z : ratios) {
    for (double v : z) {
      if (std::isfinite(v)) taus.push_back(v);
    }
  }
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  ProfileResult out;
  out.dropped_problems = dropped;
  const double np = static_cast<double>(ratios.size());
  for (std::size_t s = 0; s < ns; ++s) {
    ProfileCurve curve;
    curve.solver = solvers[s];
    curve.tau = taus;
    curve.rho.reserve(taus.size());
    for (double tau : taus) {
      int count = 0;
      for (const auto& z : ratios) {
        if (z[s] <= tau) ++count;
      }
      curve.rho.push_back(np == 0 ? 0.0 : static_cast<double>(count) / np);
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

namespace {

double aggregate_values(std::vector<double> values, Aggregate how) {
  if (values.empty()) return kProfileFailure;
  if (how == Aggregate::Mean) {
    double sum = 0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double measure_of(const RunRecord& rec, MeasureKind kind) {
  return kind == MeasureKind::Iterations ? static_cast<double>(rec.iterations)
                                         : static_cast<double>(rec.f_evals);
}

}  // namespace

std::vector<std::vector<double>> aggregate_measure(const std::vector<RunRecord>& records,
                                                   const std::vector<std::string>& problems,
                                                   const std::vector<std::string>& methods,
                                                   MeasureKind kind, Aggregate how,
                                                   std::vector<std::string>* row_names) {
  std::vector<std::vector<double>> matrix;
  if (row_names) row_names->clear();

  if (how == Aggregate::PerStart) {
    for (const auto& p : problems) {
      int max_start = -1;
      for (const auto& r : records) {
        if (r.problem == p) max_start = std::max(max_start, r.start);
      }
      for (int s = 0; s <= max_start; ++s) {
        std::vector<double> row(methods.size(), kProfileFailure);
        for (const auto& r : records) {
          if (r.problem != p || r.start != s || !r.solved()) continue;
          const auto it = std::find(methods.begin(), methods.end(), r.method);
          if (it != methods.end()) row[it - methods.begin()] = measure_of(r, kind);
        }
        matrix.push_back(std::move(row));
        if (row_names) row_names->push_back(p + "#" + std::to_string(s));
      }
    }
    return matrix;
  }

  for (const auto& p : problems) {
    std::vector<double> row;
    row.reserve(methods.size());
    for (const auto& m : methods) {
      std::vector<double> values;
      for (const auto& r : records) {
        if (r.problem == p && r.method == m && r.solved()) values.push_back(measure_of(r, kind));
      }
      row.push_back(aggregate_values(std::move(values), how));
    }
    matrix.push_back(std::move(row));
    if (row_names) row_names->push_back(p);
  }
  return matrix;
}

namespace {

RunRecord run_one(const MultiObjectiveProblem& base, const MethodSpec& method, const Vector& x0,
                  int start_index, std::uint64_t seed, bool scale, const TraceSink& sink) {
  RunRecord rec;
  rec.problem = base.name;
  rec.method = method.label;
  rec.start = start_index;
  rec.seed = seed;

  const auto t0 = std::chrono::steady_clock::now();
  Vector factors = Vector::Ones(base.m);
  const MultiObjectiveProblem* target = &base;
  ScaledProblem scaled;
  if (scale) {
    try {
      scaled = scale_at(base, x0);
    } catch (const EvalError&) {
      rec.status = TerminalStatus::EvalError;
      rec.jac_evals = 1;
      rec.walltime_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      if (sink) sink(rec, SolverTrace{});
      return rec;
    }
    factors = scaled.factors;
    target = &scaled.problem;
  }

  SolverTrace trace = solve(*target, x0, method.config);
  rec.status = trace.status;
  rec.iterations = trace.steps();
  rec.f_evals = trace.total_f_evals;
  rec.jac_evals = trace.total_jac_evals;
  if (!trace.iterations.empty()) {
    const auto& term = trace.terminal();
    rec.theta = term.theta;
    rec.f_terminal = (term.fx.array() / factors.array()).matrix();
  }
  rec.walltime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (sink) sink(rec, trace);
  return rec;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentPlan& plan, const TraceSink& sink) {
  struct Task {
    const MultiObjectiveProblem* problem;
    const MethodSpec* method;
    const Vector* x0;
    int start;
  };

  std::vector<MultiObjectiveProblem> problems;
  problems.reserve(plan.problems.size());
  for (const auto& name : plan.problems) problems.push_back(make_problem(name));

  std::vector<std::vector<Vector>> starts;
  starts.reserve(problems.size());
  for (const auto& p : problems) starts.push_back(sample_starts(p, plan.starts, plan.seed));

  std::vector<Task> tasks;
  tasks.reserve(problems.size() * plan.methods.size() * plan.starts);
  for (std::size_t p = 0; p < problems.size(); ++p) {
    for (const auto& m : plan.methods) {
      for (int s = 0; s < plan.starts; ++s) {
        tasks.push_back(Task{&problems[p], &m, &starts[p][s], s});
      }
    }
  }

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      try {
        records[i] = run_one(*t.problem, *t.method, *t.x0, t.start, plan.seed, plan.scale, sink);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int jobs = std::max(1, plan.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

FrontSet front_of(const std::vector<RunRecord>& records, const std::string& problem,
                  const std::string& method) {
  std::vector<Vector> outcomes;
  for (const auto& r : records) {
    if (r.problem == problem && r.method == method && r.solved() && r.f_terminal.size() > 0)
      outcomes.push_back(r.f_terminal);
  }
  return FrontSet{method, pareto_filter(outcomes)};
}

// ---- CSV ----------------------------------------------------------------

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = line.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

double parse_double(const std::string& s, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw CsvError(line, "bad number '" + s + "'");
  return v;
}

long long parse_int(const std::string& s, int line) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw CsvError(line, "bad integer '" + s + "'");
  return v;
}

TerminalStatus parse_status(const std::string& s, int line) {
  if (s == "critical") return TerminalStatus::Critical;
  if (s == "max_iters") return TerminalStatus::MaxIters;
  if (s == "linesearch_fail") return TerminalStatus::LineSearchFail;
  if (s == "eval_error") return TerminalStatus::EvalError;
  throw CsvError(line, "unknown status '" + s + "'");
}

constexpr const char* kRecordsHeader =
    "problem,method,start,seed,status,iters,f_evals,jac_evals,theta,walltime_ms,F_terminal";

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) {
    out << r.problem << ',' << r.method << ',' << r.start << ',' << r.seed << ','
        << to_string(r.status) << ',' << r.iterations << ',' << r.f_evals << ',' << r.jac_evals
        << ',' << format_double(r.theta) << ',' << format_double(r.walltime_ms) << ',';
    for (Eigen::Index i = 0; i < r.f_terminal.size(); ++i) {
      if (i) out << ';';
      out << format_double(r.f_terminal[i]);
    }
    out << '\n';
  }
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw CsvError(1, "empty records file");
  ++lineno;
  if (line != kRecordsHeader) throw CsvError(1, "unexpected header");

  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 11) throw CsvError(lineno, "expected 11 columns");
    RunRecord r;
    r.problem = cols[0];
    r.method = cols[1];
    r.start = static_cast<int>(parse_int(cols[2], lineno));
    r.seed = static_cast<std::uint64_t>(parse_int(cols[3], lineno));
    r.status = parse_status(cols[4], lineno);
    r.iterations = static_cast<int>(parse_int(cols[5], lineno));
    r.f_evals = static_cast<int>(parse_int(cols[6], lineno));
    r.jac_evals = static_cast<int>(parse_int(cols[7], lineno));
    r.theta = parse_double(cols[8], lineno);
    r.walltime_ms = parse_double(cols[9], lineno);
    if (!cols[10].empty()) {
      const auto parts = split(cols[10], ';');
      r.f_terminal.resize(static_cast<Eigen::Index>(parts.size()));
      for (std::size_t i = 0; i < parts.size(); ++i)
        r.f_terminal[static_cast<Eigen::Index>(i)] = parse_double(parts[i], lineno);
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_front_csv(std::ostream& out, const FrontSet& front) {
  for (const auto& p : front.points) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (i) out << ',';
      out << format_double(p[i]);
    }
    out << '\n';
  }
}

FrontSet read_front_csv(std::istream& in, const std::string& tag) {
  FrontSet front;
  front.tag = tag;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    Vector p(static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i)
      p[static_cast<Eigen::Index>(i)] = parse_double(cols[i], lineno);
    front.points.push_back(std::move(p));
  }
  return front;
}

void write_profiles_csv(std::ostream& out, const ProfileResult& profile) {
  out << "solver,tau,rho\n";
  for (const auto& curve : profile.curves) {
    for (std::size_t i = 0; i < curve.tau.size(); ++i) {
      out << curve.solver << ',' << format_double(curve.tau[i]) << ','
          << format_double(curve.rho[i]) << '\n';
    }
  }
}

}  // namespace momograd

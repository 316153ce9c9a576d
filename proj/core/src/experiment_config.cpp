#include "momograd/experiment_config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <set>
#include <sstream>

namespace momograd {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> parse_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = value.find(',', pos);
    const std::string item = trim(value.substr(pos, next - pos));
    if (!item.empty()) out.push_back(item);
    if (next == std::string::npos) return out;
    pos = next + 1;
  }
}

double parse_double(const std::string& s, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw ConfigError(line, "bad number '" + s + "'");
  return v;
}

long long parse_int(const std::string& s, int line) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError(line, "bad integer '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s, int line) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError(line, "bad boolean '" + s + "'");
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, "expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError(lineno, "empty key");
    if (!seen.insert(key).second) throw ConfigError(lineno, "duplicate key '" + key + "'");

    if (key == "problems") {
      cfg.problems = parse_list(value);
    } else if (key == "methods") {
      cfg.methods = parse_list(value);
    } else if (key == "starts") {
      cfg.starts = static_cast<int>(parse_int(value, lineno));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(value, lineno));
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "scale") {
      cfg.scale = parse_bool(value, lineno);
    } else if (key == "eps_theta") {
      cfg.eps_theta = parse_double(value, lineno);
    } else if (key == "max_iters") {
      cfg.max_iters = static_cast<int>(parse_int(value, lineno));
    } else if (key == "rho") {
      cfg.rho = parse_double(value, lineno);
    } else if (key == "delta") {
      cfg.delta = parse_double(value, lineno);
    } else if (key == "init_mode") {
      if (value != "tau" && value != "unit")
        throw ConfigError(lineno, "init_mode must be 'tau' or 'unit'");
      cfg.init_mode = value;
    } else if (key == "zeta") {
      cfg.zeta = parse_double(value, lineno);
    } else if (key == "lipschitz") {
      cfg.lipschitz = parse_double(value, lineno);
    } else if (key == "aggregate") {
      if (value != "median" && value != "mean" && value != "per-start")
        throw ConfigError(lineno, "aggregate must be 'median', 'mean', or 'per-start'");
      cfg.aggregate = value;
    } else {
      throw ConfigError(lineno, "unknown key '" + key + "'");
    }
  }

  if (cfg.starts <= 0) throw ConfigError(0, "starts must be positive");
  if (cfg.max_iters <= 0) throw ConfigError(0, "max_iters must be positive");
  if (!(cfg.eps_theta > 0)) throw ConfigError(0, "eps_theta must be positive");
  if (!(cfg.rho > 0 && cfg.rho < 1)) throw ConfigError(0, "rho must lie in (0, 1)");
  if (!(cfg.delta > 0 && cfg.delta < 1)) throw ConfigError(0, "delta must lie in (0, 1)");
  if (!(cfg.zeta > 0)) throw ConfigError(0, "zeta must be positive");
  return cfg;
}

ExperimentConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "problems = " << join(c.problems) << '\n';
  out << "methods = " << join(c.methods) << '\n';
  out << "starts = " << c.starts << '\n';
  out << "seed = " << c.seed << '\n';
  out << "output = " << c.output << '\n';
  out << "scale = " << (c.scale ? "true" : "false") << '\n';
  out << "eps_theta = " << format_double(c.eps_theta) << '\n';
  out << "max_iters = " << c.max_iters << '\n';
  out << "rho = " << format_double(c.rho) << '\n';
  out << "delta = " << format_double(c.delta) << '\n';
  out << "init_mode = " << c.init_mode << '\n';
  out << "zeta = " << format_double(c.zeta) << '\n';
  out << "lipschitz = " << format_double(c.lipschitz) << '\n';
  out << "aggregate = " << c.aggregate << '\n';
  return out.str();
}

MethodSpec parse_method(const std::string& token, const ExperimentConfig& config) {
  std::string name = token;
  int memory = -1;
  const std::size_t colon = token.find(':');
  if (colon != std::string::npos) {
    name = token.substr(0, colon);
    memory = static_cast<int>(parse_int(token.substr(colon + 1), 0));
    if (memory < 1) throw ConfigError(0, "method '" + token + "': memory must be >= 1");
  }

  SolverConfig sc;
  sc.eps_theta = config.eps_theta;
  sc.max_iters = config.max_iters;
  sc.ls.rho = config.rho;
  sc.ls.delta = config.delta;
  sc.ls.init =
      config.init_mode == "unit" ? LineSearchConfig::Init::Unit : LineSearchConfig::Init::TauK;
  sc.ls.lipschitz_L = config.lipschitz;
  sc.mmg.zeta = config.zeta;

  if (name == "sd") {
    sc.method = Method::SD;
  } else if (name == "fr") {
    sc.method = Method::FR;
  } else if (name == "cd") {
    sc.method = Method::CD;
  } else if (name == "hs") {
    sc.method = Method::HS;
  } else if (name == "mmg-i1" || name == "mmg-i") {
    sc.method = Method::MmgI;
    sc.mmg.gamma_rule = GammaRule::Constant;
    sc.mmg.memory = memory > 0 ? memory : 5;
  } else if (name == "mmg-i2") {
    sc.method = Method::MmgI;
    sc.mmg.gamma_rule = GammaRule::BarzilaiBorwein;
    sc.mmg.memory = memory > 0 ? memory : 3;
  } else if (name == "mmg-ii") {
    sc.method = Method::MmgII;
    sc.mmg.gamma_rule = GammaRule::Constant;
    sc.mmg.memory = memory > 0 ? memory : 5;
    if (!(config.lipschitz > 0))
      throw ConfigError(0, "method 'mmg-ii' needs a positive lipschitz value");
  } else {
    throw ConfigError(0, "unknown method '" + token + "'");
  }
  if (memory > 0 && sc.method != Method::MmgI && sc.method != Method::MmgII)
    throw ConfigError(0, "method '" + name + "' takes no memory parameter");
  return MethodSpec{token, sc};
}

ExperimentPlan make_plan(const ExperimentConfig& config, int jobs) {
  if (config.problems.empty()) throw ConfigError(0, "no problems selected");
  if (config.methods.empty()) throw ConfigError(0, "no methods selected");
  ExperimentPlan plan;
  plan.problems = config.problems;
  for (const auto& token : config.methods) plan.methods.push_back(parse_method(token, config));
  plan.starts = config.starts;
  plan.seed = config.seed;
  plan.scale = config.scale;
  plan.jobs = jobs;
  return plan;
}

Aggregate aggregate_of(const ExperimentConfig& config) {
  if (config.aggregate == "mean") return Aggregate::Mean;
  if (config.aggregate == "per-start") return Aggregate::PerStart;
  return Aggregate::Median;
}

}  // namespace momograd

#include "momograd/experiment_config.hpp"

#include "doctest.h"

using namespace momograd;

TEST_CASE("configs round-trip through their text form losslessly") {
  ExperimentConfig cfg;
  cfg.problems = {"AP-EX", "JOS1a", "Far1"};
  cfg.methods = {"sd", "mmg-i1:7", "mmg-i2"};
  cfg.starts = 200;
  cfg.seed = 987654321;
  cfg.output = "runs/exp-3";
  cfg.scale = false;
  cfg.eps_theta = 3e-7;
  cfg.max_iters = 2500;
  cfg.rho = 1e-4;
  cfg.delta = 0.25;
  cfg.init_mode = "unit";
  cfg.zeta = 0.125;
  cfg.lipschitz = 0.04;
  cfg.aggregate = "per-start";

  CHECK(parse_config_string(serialize_config(cfg)) == cfg);

  // Defaults survive the trip too.
  const ExperimentConfig defaults;
  CHECK(parse_config_string(serialize_config(defaults)) == defaults);
}

TEST_CASE("parsing tolerates comments, blanks, and spacing") {
  const std::string text =
      "# benchmark setup\n"
      "\n"
      "problems = AP-EX , BK1\n"
      "  methods=sd,mmg-i1\n"
      "starts = 5\n";
  const auto cfg = parse_config_string(text);
  REQUIRE(cfg.problems.size() == 2);
  CHECK(cfg.problems[1] == "BK1");
  CHECK(cfg.methods[1] == "mmg-i1");
  CHECK(cfg.starts == 5);
  CHECK(cfg.seed == 0);  // untouched default
}

TEST_CASE("parse errors carry line numbers") {
  auto expect_line = [](const std::string& text, int line) {
    try {
      parse_config_string(text);
      FAIL("expected ConfigError for: " << text);
    } catch (const ConfigError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("starts = 5\nnot-a-kv-line\n", 2);
  expect_line("unknown_key = 1\n", 1);
  expect_line("starts = soon\n", 1);
  expect_line("scale = maybe\n", 1);
  expect_line("starts = 1\nstarts = 2\n", 2);
  expect_line("init_mode = bold\n", 1);
  expect_line("aggregate = mode\n", 1);
  expect_line("rho = 1.5\n", 0);   // semantic: rho outside (0, 1)
  expect_line("starts = -3\n", 0); // semantic: nonpositive
}

TEST_CASE("method tokens expand to solver configurations") {
  ExperimentConfig cfg;
  cfg.eps_theta = 1e-5;
  cfg.rho = 0.01;
  cfg.lipschitz = 2.0;

  const auto sd = parse_method("sd", cfg);
  CHECK(sd.label == "sd");
  CHECK(sd.config.method == Method::SD);
  CHECK(sd.config.eps_theta == 1e-5);
  CHECK(sd.config.ls.rho == 0.01);

  const auto i1 = parse_method("mmg-i1", cfg);
  CHECK(i1.config.method == Method::MmgI);
  CHECK(i1.config.mmg.gamma_rule == GammaRule::Constant);
  CHECK(i1.config.mmg.memory == 5);

  const auto i2 = parse_method("mmg-i2", cfg);
  CHECK(i2.config.mmg.gamma_rule == GammaRule::BarzilaiBorwein);
  CHECK(i2.config.mmg.memory == 3);

  const auto custom = parse_method("mmg-i1:7", cfg);
  CHECK(custom.config.mmg.memory == 7);
  CHECK(custom.label == "mmg-i1:7");

  const auto ii = parse_method("mmg-ii:2", cfg);
  CHECK(ii.config.method == Method::MmgII);
  CHECK(ii.config.mmg.memory == 2);
  CHECK(ii.config.ls.lipschitz_L == 2.0);

  // The single-run alias maps to the constant-gamma variant.
  const auto alias = parse_method("mmg-i", cfg);
  CHECK(alias.config.method == Method::MmgI);
  CHECK(alias.config.mmg.gamma_rule == GammaRule::Constant);

  CHECK_THROWS_AS(parse_method("newton", cfg), ConfigError);
  CHECK_THROWS_AS(parse_method("mmg-i1:0", cfg), ConfigError);
  CHECK_THROWS_AS(parse_method("sd:3", cfg), ConfigError);

  ExperimentConfig no_l;
  CHECK_THROWS_AS(parse_method("mmg-ii", no_l), ConfigError);
}

TEST_CASE("plans require a nonempty selection") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(make_plan(cfg, 1), ConfigError);
  cfg.problems = {"AP-EX"};
  CHECK_THROWS_AS(make_plan(cfg, 1), ConfigError);
  cfg.methods = {"sd"};
  const auto plan = make_plan(cfg, 4);
  CHECK(plan.jobs == 4);
  CHECK(plan.starts == cfg.starts);
}

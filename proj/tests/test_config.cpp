// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "agesirs/config.h"
#include "doctest.h"

using namespace agesirs;

TEST_CASE("an empty document yields the baseline configuration") {
  const RunConfig cfg = parse_config("");
  CHECK(cfg == RunConfig{});
  CHECK(cfg.preset == "table2");
  CHECK(cfg.params == table2());
  CHECK(cfg.grid == Grid{0.0, 100.0, 10000});
  CHECK(cfg.y0 == State{100.0, 100.0, 10.0, 10.0, 5.0, 5.0});
  CHECK(cfg.seed == 42);
  CHECK(cfg.output_dir == "out");
}

TEST_CASE("presets rewrite the parameter block") {
  RunConfig cfg;
  apply_preset(cfg, "table3");
  CHECK(cfg.preset == "table3");
  CHECK(cfg.params == table3());
  apply_preset(cfg, "table4");
  CHECK(cfg.params == table4());
  apply_preset(cfg, "table2");
  CHECK(cfg.params == table2());
  CHECK_THROWS_AS(apply_preset(cfg, "table9"), DomainError);
}

TEST_CASE("keys parse into their fields") {
  const RunConfig cfg = parse_config(
      "# comment line\n"
      "params.mu = 0.08   # trailing comment\n"
      "grid.steps = 500\n"
      "grid.T = 25\n"
      "y0.I2 = 7.5\n"
      "weights.A2 = 0.25\n"
      "bounds.u12_max = 0.9\n"
      "sweep.max_iters = 123\n"
      "sensitivity.threshold = 0.1\n"
      "study.alpha_values = 0.1, 0.7\n"
      "output_dir = results\n"
      "seed = 7\n");
  CHECK(cfg.params.mu == 0.08);
  CHECK(cfg.grid.n_steps == 500);
  CHECK(cfg.grid.T == 25.0);
  CHECK(cfg.y0[iI2] == 7.5);
  CHECK(cfg.weights.A2 == 0.25);
  CHECK(cfg.bounds.u12_max == 0.9);
  CHECK(cfg.sweep_settings.max_iters == 123);
  CHECK(cfg.sensitivity_threshold == 0.1);
  CHECK(cfg.study.alpha_values == std::vector<double>{0.1, 0.7});
  CHECK(cfg.output_dir == "results");
  CHECK(cfg.seed == 7);
}

TEST_CASE("the preset applies before explicit keys regardless of order") {
  const RunConfig cfg = parse_config(
      "params.mu = 0.9\n"
      "preset = table4\n");
  CHECK(cfg.preset == "table4");
  CHECK(cfg.params.mu == 0.9);          // explicit key wins
  CHECK(cfg.params.beta1 == 0.0133);    // rest of the preset intact
  CHECK(cfg.params.alpha == 0.5);
}

TEST_CASE("malformed documents are rejected with the key path") {
  CHECK_THROWS_WITH_AS(parse_config("params.bogus = 1\n"),
                       "params.bogus: unknown key", DomainError);
  CHECK_THROWS_WITH_AS(parse_config("seed = 1\nseed = 2\n"),
                       "seed: duplicate key", DomainError);
  CHECK_THROWS_AS(parse_config("params.mu = fast\n"), DomainError);
  CHECK_THROWS_AS(parse_config("grid.steps = 1.5\n"), DomainError);
  CHECK_THROWS_AS(parse_config("just some words\n"), DomainError);
  CHECK_THROWS_AS(parse_config("= 3\n"), DomainError);
}

TEST_CASE("serialization round-trips every field") {
  RunConfig cfg;
  apply_preset(cfg, "table4");
  cfg.params.beta2 = 1.75;
  cfg.y0 = State{1.5, 2.5, 3.5, 4.5, 5.5, 6.5};
  cfg.grid = Grid{1.0, 250.0, 12345};
  cfg.weights = CostWeights{3e-5, 0.125};
  cfg.bounds = ControlBounds{0.8, 0.45};
  cfg.sweep_settings = SweepSettings{77, 2e-6, 0.25};
  cfg.sensitivity_threshold = 0.2;
  cfg.study.r0_lo = 1.5;
  cfg.study.r0_hi = 4.5;
  cfg.study.r0_step = 0.25;
  cfg.study.r0_values = {1.2, 1.4, 2.0, 3.0, 5.0};
  cfg.study.alpha_values = {0.0, 0.3};
  cfg.study.alpha_r0_values = {2.5};
  cfg.study.steps_replication = 1000;
  cfg.study.steps_sensitivity = 2000;
  cfg.study.steps_sweeps = 3000;
  cfg.study.steps_stability = 4000;
  cfg.output_dir = "elsewhere/run1";
  cfg.seed = 987654321;

  const std::string text = serialize_config(cfg);
  CHECK(text.find("grid.steps = 12345") != std::string::npos);
  CHECK(text.find("preset = table4") != std::string::npos);
  const RunConfig back = parse_config(text);
  CHECK(back == cfg);

  SUBCASE("the default configuration also round-trips") {
    const RunConfig def;
    CHECK(parse_config(serialize_config(def)) == def);
  }
}

TEST_CASE("validate rejects out-of-range settings with the key path") {
  RunConfig cfg;
  CHECK_NOTHROW(validate(cfg));

  cfg.weights.A1 = 0.0;
  CHECK_THROWS_WITH_AS(validate(cfg), "weights.A1 must be > 0", DomainError);
  cfg = RunConfig{};
  cfg.sweep_settings.relaxation = 0.0;
  CHECK_THROWS_WITH_AS(validate(cfg), "sweep.relaxation must be in (0, 1]",
                       DomainError);
  cfg = RunConfig{};
  cfg.sensitivity_threshold = 0.0;
  CHECK_THROWS_WITH_AS(validate(cfg), "sensitivity.threshold must be > 0",
                       DomainError);
  cfg = RunConfig{};
  cfg.study.steps_sweeps = 0;
  CHECK_THROWS_WITH_AS(validate(cfg), "study.steps_sweeps must be >= 1",
                       DomainError);
  cfg = RunConfig{};
  cfg.y0[iR2] = -1.0;
  CHECK_THROWS_WITH_AS(validate(cfg), "y0.R2 must be >= 0", DomainError);
  cfg = RunConfig{};
  cfg.output_dir.clear();
  CHECK_THROWS_WITH_AS(validate(cfg), "output_dir must be nonempty", DomainError);
  cfg = RunConfig{};
  cfg.study.r0_values = {2.0, 0.0};
  CHECK_THROWS_WITH_AS(validate(cfg), "study.r0_values entries must be > 0",
                       DomainError);
}

TEST_CASE("the sweep grid expands unless explicit values are given") {
  StudySettings s;
  s.r0_lo = 1.0;
  s.r0_hi = 2.0;
  s.r0_step = 0.5;
  CHECK(study_r0_grid(s) == std::vector<double>{1.0, 1.5, 2.0});

  s.r0_values = {6.0, 1.2};
  CHECK(study_r0_grid(s) == std::vector<double>{6.0, 1.2});  // taken verbatim

  StudySettings def;
  const auto grid = study_r0_grid(def);
  REQUIRE(grid.size() == 60);
  CHECK(grid.front() == 1.1);
  CHECK(grid.back() == doctest::Approx(7.0).epsilon(1e-12));
}

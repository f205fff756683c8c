// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <string>
#include <vector>

#include "agesirs/sensitivity.h"
#include "agesirs/simd.h"
#include "doctest.h"

using namespace agesirs;

namespace {

// Gentle sweep scenario: low-recruitment parameters, small population, fine
// step, short horizon.
SweepSpec small_spec() {
  SweepSpec spec;
  spec.base = table3();
  spec.y0 = State{5.0, 2.0, 1.0, 3.0, 1.0, 0.5};
  spec.grid = Grid{0.0, 10.0, 5000};
  spec.curve_stride = 1;
  return spec;
}

}  // namespace

TEST_CASE("ensemble statistics: exact small cases") {
  SUBCASE("identical curves have zero deviation") {
    const std::vector<std::vector<double>> curves{{1.0, 2.0, 3.0},
                                                  {1.0, 2.0, 3.0}};
    const auto [mean, mse] = ensemble_stats(curves);
    CHECK(mean == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(mse == std::vector<double>{0.0, 0.0, 0.0});
  }

  SUBCASE("two-point spread") {
    const auto [mean, mse] = ensemble_stats({{0.0}, {2.0}});
    CHECK(mean == std::vector<double>{1.0});
    CHECK(mse == std::vector<double>{1.0});  // population variance
  }

  SUBCASE("scaling values by 10 scales the deviation by 100") {
    const auto [m1, s1] = ensemble_stats({{1.0}, {2.0}, {3.0}});
    const auto [m2, s2] = ensemble_stats({{10.0}, {20.0}, {30.0}});
    CHECK(m2[0] == 10.0 * m1[0]);
    CHECK(s2[0] == 100.0 * s1[0]);
  }
}

TEST_CASE("ensemble statistics: random cross-check and invariances") {
  Rng rng(71);
  std::vector<std::vector<double>> curves(50, std::vector<double>(17));
  for (auto& c : curves)
    for (double& v : c) v = rng.uniform(-5.0, 5.0);
  const auto [mean, mse] = ensemble_stats(curves);
  for (std::size_t k = 0; k < 17; ++k) {
    double m = 0.0;
    for (const auto& c : curves) m += c[k];
    m /= static_cast<double>(curves.size());
    double v = 0.0;
    for (const auto& c : curves) v += (c[k] - m) * (c[k] - m);
    v /= static_cast<double>(curves.size());
    CHECK(std::abs(mean[k] - m) <= 1e-12 * (1.0 + std::abs(m)));
    CHECK(std::abs(mse[k] - v) <= 1e-12 * (1.0 + v));
  }

  SUBCASE("permutation invariance up to roundoff") {
    std::vector<std::vector<double>> shuffled(curves.rbegin(), curves.rend());
    const auto [m2, s2] = ensemble_stats(shuffled);
    for (std::size_t k = 0; k < 17; ++k) {
      CHECK(std::abs(mean[k] - m2[k]) <= 1e-12 * (1.0 + std::abs(mean[k])));
      CHECK(std::abs(mse[k] - s2[k]) <= 1e-12 * (1.0 + mse[k]));
    }
  }
}

TEST_CASE("ensemble statistics reject empty and ragged input") {
  CHECK_THROWS_AS(ensemble_stats({}), DomainError);
  CHECK_THROWS_AS(ensemble_stats({{1.0, 2.0}, {1.0}}), DomainError);
}

TEST_CASE("sweeping one value can never be called sensitive") {
  SweepSpec spec = small_spec();
  spec.param_name = "alpha";
  spec.lo = spec.hi = 0.4;
  spec.step = 1.0;
  const SweepResult r = run_sweep(spec);
  CHECK(r.values == std::vector<double>{0.4});
  CHECK(r.score == 0.0);
  CHECK_FALSE(r.sensitive);
  CHECK(r.warnings.empty());
}

TEST_CASE("sweep input validation") {
  SweepSpec spec = small_spec();
  spec.param_name = "gamma";
  spec.lo = 0.0;
  spec.hi = 1.0;
  spec.step = 0.5;
  CHECK_THROWS_WITH_AS(run_sweep(spec), "run_sweep: unknown parameter 'gamma'",
                       DomainError);

  spec.param_name = "beta1";
  spec.lo = -0.2;
  spec.hi = 0.2;
  CHECK_THROWS_AS(run_sweep(spec), DomainError);  // negative trial value

  spec.lo = 1.0;
  spec.hi = 0.5;
  CHECK_THROWS_WITH_AS(run_sweep(spec), "run_sweep: lo > hi", DomainError);

  spec.lo = 0.0;
  spec.hi = 1.0;
  spec.step = 0.0;
  CHECK_THROWS_WITH_AS(run_sweep(spec), "run_sweep: step must be > 0",
                       DomainError);
}

TEST_CASE("invalid trial values are skipped with a warning") {
  // mu = 0 violates the population bound and must be skipped, not run.
  SweepSpec spec = small_spec();
  spec.param_name = "mu";
  spec.lo = 0.0;
  spec.hi = 0.2;
  spec.step = 0.1;
  const SweepResult r = run_sweep(spec);
  CHECK(r.values == std::vector<double>{0.1, 0.2});
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("mu") != std::string::npos);
  CHECK(r.warnings[0].find("skipped") != std::string::npos);

  SUBCASE("a sweep with no valid values throws") {
    spec.hi = 0.0;
    spec.step = 1.0;
    CHECK_THROWS_AS(run_sweep(spec), DomainError);
  }
}

TEST_CASE("value grid includes both endpoints despite accumulation error") {
  SweepSpec spec = small_spec();
  spec.param_name = "alpha";
  spec.lo = 0.0;
  spec.hi = 0.5;
  spec.step = 0.1;
  const SweepResult r = run_sweep(spec);
  REQUIRE(r.values.size() == 6);
  CHECK(r.values.front() == 0.0);
  CHECK(r.values.back() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("swept treatment rates feed the integrator directly") {
  SweepSpec spec = small_spec();
  spec.param_name = "u11";
  spec.lo = 0.0;
  spec.hi = 0.5;
  spec.step = 0.5;
  const SweepResult r = run_sweep(spec);
  REQUIRE(r.values.size() == 2);

  // Reproduce each member by hand: the trial value must land both in the
  // parameter set and in the constant control.
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    Params trial = spec.base;
    trial.u11 = r.values[i];
    EnsembleOptions opt;
    opt.curve_stride = 1;
    const EnsembleResult one =
        integrate_ensemble({{trial, trial.u11, trial.u12}}, spec.y0, spec.grid, opt);
    CHECK(r.curves[i] == one.curves[0]);  // bitwise
  }
  // Treatment off vs. on must separate the infected curves.
  CHECK(r.curves[0].back() != r.curves[1].back());
  CHECK(r.score > 0.0);
}

TEST_CASE("a parameter the trajectories depend on strongly is flagged") {
  // Mortality spanning 0.062..2 collapses one trajectory while the other
  // keeps circulating, so the ensemble spread dwarfs the default threshold.
  SweepSpec spec = small_spec();
  spec.param_name = "mu";
  spec.lo = 0.062;
  spec.hi = 2.0;
  spec.step = 1.0;
  const SweepResult r = run_sweep(spec);
  REQUIRE(r.values.size() == 2);  // 0.062 and 1.062; 2.062 overshoots hi
  CHECK(r.score > 0.05);
  CHECK(r.sensitive);
  CHECK((r.backend == "avx2" || r.backend == "scalar"));
  CHECK(r.backend == preferred_backend());
}

TEST_CASE("the published sweep protocol is transcribed in full") {
  const auto& rows = table5_rows();
  REQUIRE(rows.size() == 29);

  int sensitive_rows = 0;
  for (const auto& row : rows) {
    CHECK(row.lo < row.hi);
    CHECK(row.step > 0.0);
    if (row.published_sensitive) ++sensitive_rows;
  }
  CHECK(sensitive_rows == 6);

  auto find = [&](const std::string& param, double lo) -> const Table5Row& {
    for (const auto& row : rows)
      if (row.param == param && std::abs(row.lo - lo) < 1e-12) return row;
    FAIL("missing sweep row " << param << " lo=" << lo);
    return rows.front();
  };

  CHECK(find("u11", 0.0).published_sensitive);
  CHECK(find("u11", 0.0).hi == 0.5);
  CHECK(find("b1", 6.5).published_sensitive);
  CHECK(find("b1", 7.192).published_sensitive);
  CHECK_FALSE(find("b1", 0.1).published_sensitive);
  CHECK(find("beta1", 0.0).published_sensitive);
  CHECK(find("beta1", 0.0).hi == 1.33);
  CHECK(find("d1", 7.3e-05).published_sensitive);
  CHECK(find("mu", 0.0).published_sensitive);
  CHECK_FALSE(find("mu", 0.5).published_sensitive);
  CHECK(find("d2", 9.13e-05).hi == 2.0);
  CHECK(find("delta1", 0.0714).step == 0.001);
  CHECK(find("delta2", 0.0714).step == 0.001);
  CHECK(find("m", 0.0).step == 0.0001);
}

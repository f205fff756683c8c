// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "agesirs/experiments.h"
#include "agesirs/reproduction.h"
#include "doctest.h"

using namespace agesirs;

namespace {

const State kY0{100.0, 100.0, 10.0, 10.0, 5.0, 5.0};

Trajectory constant_traj(const Grid& g, double I1, double I2) {
  Trajectory t;
  t.grid = g;
  State s{};
  s[iI1] = I1;
  s[iI2] = I2;
  t.samples.assign(static_cast<std::size_t>(g.n_steps) + 1, s);
  return t;
}

}  // namespace

TEST_CASE("cumulative burden is the integral of the infected load") {
  const Grid g{0.0, 10.0, 100};
  CHECK(cumulative_burden(constant_traj(g, 0.0, 0.0)) == 0.0);
  CHECK(cumulative_burden(constant_traj(g, 2.0, 1.0)) ==
        doctest::Approx(30.0).epsilon(1e-12));
  // Linearly growing I1: trapezoid integrates t exactly.
  Trajectory lin = constant_traj(g, 0.0, 0.0);
  for (std::size_t k = 0; k < lin.samples.size(); ++k)
    lin.samples[k][iI1] = g.h() * static_cast<double>(k);
  CHECK(cumulative_burden(lin) == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("summarize_run aggregates a sweep result coherently") {
  const Grid g{0.0, 4.0, 4};
  FbsResult r;
  r.states.grid = g;
  r.states.samples = {State{0, 1, 2, 0, 3, 4}, State{0, 2, 2, 0, 3, 4},
                      State{0, 3, 2, 0, 3, 4}, State{0, 4, 2, 0, 3, 4},
                      State{0, 5, 2, 0, 3, 4}};
  r.cost = 123.5;
  r.iters = 7;
  r.converged = true;
  const StrategyOutcome o = summarize_run(Strategy::u11_only, r);
  CHECK(o.strategy == Strategy::u11_only);
  CHECK(o.avg_I1 == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(o.avg_I2 == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(o.avg_R1 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(o.avg_R2 == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(o.burden == doctest::Approx(cumulative_burden(r.states)).epsilon(1e-14));
  CHECK(o.J == 123.5);
  CHECK(o.iters == 7);
  CHECK(o.converged);
}

TEST_CASE("beta scaling hits the requested reproduction number") {
  const Params base = table2();
  const double base_r0 = r0(base, R0Variant::no_control).r0;

  SUBCASE("scaling to the current value is the identity") {
    const Params same = scale_betas_to_r0(base, base_r0);
    CHECK(same.beta1 == doctest::Approx(base.beta1).epsilon(1e-8));
    CHECK(same.beta4 == doctest::Approx(base.beta4).epsilon(1e-8));
  }

  SUBCASE("the reproduction number is linear in a common beta factor") {
    const Params doubled = scale_betas_to_r0(base, 2.0 * base_r0);
    CHECK(doubled.beta1 == doctest::Approx(2.0 * base.beta1).epsilon(1e-8));
    CHECK(doubled.beta2 == doctest::Approx(2.0 * base.beta2).epsilon(1e-8));
    CHECK(doubled.beta3 == doctest::Approx(2.0 * base.beta3).epsilon(1e-8));
    CHECK(doubled.beta4 == doctest::Approx(2.0 * base.beta4).epsilon(1e-8));
  }

  SUBCASE("requested targets are met across the study range") {
    for (double target : {1.2, 3.0, 7.0}) {
      const Params scaled = scale_betas_to_r0(base, target);
      CHECK(r0(scaled, R0Variant::no_control).r0 ==
            doctest::Approx(target).epsilon(1e-8));
      // Everything except the transmission rates is untouched.
      Params reset = scaled;
      reset.beta1 = base.beta1;
      reset.beta2 = base.beta2;
      reset.beta3 = base.beta3;
      reset.beta4 = base.beta4;
      CHECK(reset == base);
    }
    const Params lo = scale_betas_to_r0(base, 2.0);
    const Params hi = scale_betas_to_r0(base, 5.0);
    CHECK(lo.beta1 < hi.beta1);
  }
}

TEST_CASE("strategy comparison on a short horizon") {
  const Params p = scale_betas_to_r0(table2(), 3.0);
  const Grid g{0.0, 20.0, 2000};
  const auto outcomes =
      strategy_comparison(p, kY0, g, CostWeights{}, ControlBounds{}, {});
  REQUIRE(outcomes.size() == 4);
  CHECK(outcomes[0].strategy == Strategy::none);
  CHECK(outcomes[1].strategy == Strategy::u11_only);
  CHECK(outcomes[2].strategy == Strategy::u12_only);
  CHECK(outcomes[3].strategy == Strategy::both);
  for (const auto& o : outcomes) {
    CHECK(o.converged);
    CHECK(o.burden > 0.0);
  }
  // Any treatment is at least as good as none in objective value, and the
  // combined strategy has the cheapest objective of all four.
  for (int i = 1; i < 4; ++i) CHECK(outcomes[i].J <= outcomes[0].J + 1e-9);
  for (int i = 0; i < 4; ++i) CHECK(outcomes[3].J <= outcomes[i].J + 1e-9);
}

TEST_CASE("burden studies annotate every cell") {
  const Params base = table2();
  const Grid g{0.0, 20.0, 2000};
  const std::vector<Strategy> strategies{Strategy::none, Strategy::both};

  const auto points = r0_sweep(base, {3.0}, strategies, kY0, g, CostWeights{},
                               ControlBounds{}, SweepSettings{});
  REQUIRE(points.size() == 2);
  for (const auto& pt : points) {
    CHECK(pt.study == "r0-sweep");
    CHECK(pt.r0_target == 3.0);
    CHECK(pt.alpha == base.alpha);
    CHECK(pt.converged);
    CHECK(pt.burden == doctest::Approx(pt.burden_I1 + pt.burden_I2).epsilon(1e-9));
  }
  CHECK(points[0].strategy == Strategy::none);
  CHECK(points[1].strategy == Strategy::both);
  CHECK(points[1].burden <= points[0].burden + 1e-9);

  const auto alpha_points =
      alpha_sweep(base, {0.0, 2.0}, Strategy::u12_only, {3.0}, kY0, g,
                  CostWeights{}, ControlBounds{}, SweepSettings{});
  REQUIRE(alpha_points.size() == 2);
  for (const auto& pt : alpha_points) {
    CHECK(pt.study == "alpha-sweep");
    CHECK(pt.strategy == Strategy::u12_only);
    CHECK(pt.r0_target == 3.0);
    CHECK(pt.converged);
    CHECK(std::isfinite(pt.J));
  }
  CHECK(alpha_points[0].alpha == 0.0);
  CHECK(alpha_points[1].alpha == 2.0);

  SUBCASE("repeat runs are bit-identical") {
    const auto again = r0_sweep(base, {3.0}, strategies, kY0, g, CostWeights{},
                                ControlBounds{}, SweepSettings{});
    REQUIRE(again.size() == points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      CHECK(again[i].burden == points[i].burden);
      CHECK(again[i].J == points[i].J);
      CHECK(again[i].avg_I1 == points[i].avg_I1);
    }
  }
}

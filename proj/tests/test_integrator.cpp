// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>
#include <limits>

#include "agesirs/integrator.h"
#include "agesirs/model.h"
#include "doctest.h"

using namespace agesirs;

namespace {

using State1 = std::array<double, 1>;

double decay_error(std::int64_t n) {
  auto field = [](double, const State1& y) { return State1{-y[0]}; };
  const auto traj = rk4_forward(field, State1{1.0}, Grid{0.0, 2.0, n});
  return std::abs(traj.samples.back()[0] - std::exp(-2.0));
}

}  // namespace

TEST_CASE("forward RK4 integrates exponential decay accurately") {
  auto field = [](double, const State1& y) { return State1{-y[0]}; };
  const auto traj = rk4_forward(field, State1{1.0}, Grid{0.0, 5.0, 1000});
  CHECK(traj.samples.size() == 1001);
  CHECK(traj.samples[0][0] == 1.0);
  CHECK(std::abs(traj.samples.back()[0] - std::exp(-5.0)) < 1e-10);
}

TEST_CASE("forward RK4 reproduces cubic polynomials to roundoff") {
  auto field = [](double t, const State1&) { return State1{3.0 * t * t}; };
  const auto traj = rk4_forward(field, State1{0.0}, Grid{0.0, 2.0, 10});
  CHECK(traj.samples.back()[0] == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("forward RK4 converges at fourth order") {
  const double e10 = decay_error(10);
  const double e20 = decay_error(20);
  const double e40 = decay_error(40);
  CHECK(e10 / e20 > 12.0);
  CHECK(e10 / e20 < 20.0);
  CHECK(e20 / e40 > 12.0);
  CHECK(e20 / e40 < 20.0);
  CHECK(std::log2(e10 / e20) == doctest::Approx(4.0).epsilon(0.05));
  CHECK(std::log2(e20 / e40) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("backward RK4 solves the costate-style terminal problem") {
  // lam' = -lam with lam(T) = 1 has lam(t) = exp(T - t).
  auto field = [](double, const State1& lam) { return State1{-lam[0]}; };
  const auto traj = rk4_backward(field, State1{1.0}, Grid{0.0, 1.0, 1000});
  CHECK(traj.samples.back()[0] == 1.0);  // terminal condition stored at node n
  CHECK(std::abs(traj.samples[0][0] - std::exp(1.0)) < 1e-10);
}

TEST_CASE("backward sweep is the exact mirror of a sign-flipped forward sweep") {
  // For an autonomous field f, integrating backwards from z equals running
  // forwards from z under -f, node for node, bit for bit: every stage value
  // and the final combination agree as IEEE operations.
  const Params p = table3();
  const ControlPair u{p.u11, p.u12};
  auto fwd_field = [&](double, const State& y) {
    State d = rhs(y, p, u);
    for (double& v : d) v = -v;
    return d;
  };
  auto bwd_field = [&](double, const State& y) { return rhs(y, p, u); };
  const State z{1.0, 0.5, 0.2, 0.8, 0.3, 0.1};
  const Grid g{0.0, 1.0, 100};
  const auto fwd = rk4_forward(fwd_field, z, g);
  const auto bwd = rk4_backward(bwd_field, z, g);
  REQUIRE(fwd.samples.size() == bwd.samples.size());
  const std::size_t n = fwd.samples.size() - 1;
  for (std::size_t k = 0; k <= n; ++k)
    for (int j = 0; j < 6; ++j) CHECK(bwd.samples[n - k][j] == fwd.samples[k][j]);
}

TEST_CASE("forward then backward returns to the initial state") {
  // Backward integration is the time-reverse of the same ODE, so the loop
  // closes up to truncation error. The horizon is kept short: retracing an
  // epidemic transient backwards amplifies error exponentially, so a long
  // round trip is ill-conditioned no matter the step size.
  const Params p = table3();
  const ControlPair u{p.u11, p.u12};
  auto field = [&](double, const State& y) { return rhs(y, p, u); };
  const State y0{1.0, 0.5, 0.2, 0.8, 0.3, 0.1};
  const Grid g{0.0, 2.0, 2000};
  const auto fwd = rk4_forward(field, y0, g);
  const auto back = rk4_backward(field, fwd.samples.back(), g);
  for (int j = 0; j < 6; ++j)
    CHECK(std::abs(back.samples[0][j] - y0[j]) < 1e-6 * (1.0 + std::abs(y0[j])));
}

TEST_CASE("sample_lookup snaps to the nearest node") {
  auto field = [](double, const State1& y) { return State1{y[0]}; };
  const auto traj = rk4_forward(field, State1{1.0}, Grid{0.0, 1.0, 10});
  CHECK(&sample_lookup(traj, 0.0) == &traj.samples[0]);
  CHECK(&sample_lookup(traj, 1.0) == &traj.samples[10]);
  CHECK(&sample_lookup(traj, 0.26) == &traj.samples[3]);
  CHECK(&sample_lookup(traj, 0.74) == &traj.samples[7]);
  CHECK_THROWS_AS(sample_lookup(traj, 1.5), DomainError);
  CHECK_THROWS_AS(sample_lookup(traj, -0.5), DomainError);
}

TEST_CASE("invalid grids and seeds are rejected") {
  auto field = [](double, const State1& y) { return State1{y[0]}; };
  CHECK_THROWS_WITH_AS(rk4_forward(field, State1{1.0}, Grid{0.0, 1.0, 0}),
                       "grid.steps must be >= 1", DomainError);
  CHECK_THROWS_AS(rk4_forward(field, State1{1.0}, Grid{2.0, 1.0, 10}),
                  DomainError);
  CHECK_THROWS_AS(
      rk4_forward(field, State1{std::numeric_limits<double>::quiet_NaN()},
                  Grid{0.0, 1.0, 10}),
      DomainError);
  CHECK_THROWS_AS(
      rk4_backward(field, State1{std::numeric_limits<double>::infinity()},
                   Grid{0.0, 1.0, 10}),
      DomainError);
}

TEST_CASE("finite-time blow-up raises IntegrationError with the step index") {
  // y' = y^2 from y(0) = 2 blows up at t = 1/2, inside the horizon.
  auto field = [](double, const State1& y) { return State1{y[0] * y[0]}; };
  bool threw = false;
  try {
    rk4_forward(field, State1{2.0}, Grid{0.0, 1.0, 100});
  } catch (const IntegrationError& e) {
    threw = true;
    CHECK(e.step_index >= 1);
    CHECK(e.step_index <= 100);
    CHECK(std::string(e.what()).find("at step") != std::string::npos);
  }
  CHECK(threw);
}

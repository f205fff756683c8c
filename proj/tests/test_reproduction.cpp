// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "agesirs/model.h"
#include "agesirs/reproduction.h"
#include "doctest.h"

using namespace agesirs;

namespace {

Params random_params(Rng& rng) {
  Params p;
  p.b1 = rng.uniform(0.01, 10.0);
  p.delta1 = rng.uniform(0.0, 0.5);
  p.delta2 = rng.uniform(0.0, 0.5);
  p.beta1 = rng.uniform(0.0, 2.0);
  p.beta2 = rng.uniform(0.0, 2.0);
  p.beta3 = rng.uniform(0.0, 2.0);
  p.beta4 = rng.uniform(0.0, 2.0);
  p.mu = rng.uniform(0.05, 0.8);
  p.d1 = rng.uniform(0.0, 0.1);
  p.d2 = rng.uniform(0.0, 0.1);
  p.u11 = rng.uniform(0.0, 0.5);
  p.u12 = rng.uniform(0.0, 0.5);
  p.alpha = rng.uniform(0.1, 2.0);
  p.m = rng.uniform(0.0, 0.01);
  return p;
}

}  // namespace

TEST_CASE("disease-free equilibrium matches its closed form and annuls rhs") {
  for (const Params& p : {table2(), table3(), table4()}) {
    const State eq = dfe(p);
    CHECK(eq[iS1] == doctest::Approx(p.b1 / (p.mu + p.m)).epsilon(1e-14));
    CHECK(eq[iS2] ==
          doctest::Approx(p.b1 * p.m / (p.mu * (p.mu + p.m))).epsilon(1e-14));
    CHECK(eq[iI1] == 0.0);
    CHECK(eq[iR1] == 0.0);
    CHECK(eq[iI2] == 0.0);
    CHECK(eq[iR2] == 0.0);
    const State dy = rhs(eq, p, {p.u11, p.u12});
    for (int j = 0; j < 6; ++j) CHECK(std::abs(dy[j]) < 1e-12);
  }
}

TEST_CASE("reproduction numbers for the reference scenarios") {
  const R0Breakdown low = r0(table3(), R0Variant::with_control);
  CHECK(low.r0 == doctest::Approx(0.983258).epsilon(1e-5));
  CHECK(low.r0 < 1.0);

  const R0Breakdown high = r0(table4(), R0Variant::with_control);
  CHECK(high.r0 == doctest::Approx(2.761454).epsilon(1e-5));
  const R0Breakdown high_nc = r0(table4(), R0Variant::no_control);
  CHECK(high_nc.r0 == doctest::Approx(2.985115).epsilon(1e-5));

  const R0Breakdown base = r0(table2(), R0Variant::no_control);
  CHECK(base.r0 == doctest::Approx(2516.783213).epsilon(1e-6));
}

TEST_CASE("closed form agrees with the next-generation matrix") {
  Rng rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const Params p = random_params(rng);
    for (R0Variant v : {R0Variant::with_control, R0Variant::no_control}) {
      const R0Breakdown b = r0(p, v);
      CHECK(std::abs(b.r0 - b.r0_matrix) <= 1e-10 * std::max(1.0, b.r0));
      CHECK(b.r0 >= 0.0);
      const double expected_p =
          1.0 / (p.d1 + p.mu + (v == R0Variant::with_control ? p.u11 : 0.0));
      CHECK(b.p == doctest::Approx(expected_p).epsilon(1e-14));
      CHECK(b.q == doctest::Approx(1.0 / (p.d2 + p.mu)).epsilon(1e-14));
    }
  }
}

TEST_CASE("r0 is zero without transmission and monotone in transmission") {
  Params p = table3();
  p.beta1 = p.beta2 = p.beta3 = p.beta4 = 0.0;
  CHECK(r0(p, R0Variant::with_control).r0 == 0.0);

  double prev = 0.0;
  for (double b1v : {0.2, 0.6, 1.2, 2.4}) {
    Params q = table3();
    q.beta1 = b1v;
    const double v = r0(q, R0Variant::with_control).r0;
    CHECK(v > prev);
    prev = v;
  }
  prev = 0.0;
  for (double b4v : {0.1, 0.4, 1.0, 2.0}) {
    Params q = table3();
    q.beta4 = b4v;
    const double v = r0(q, R0Variant::with_control).r0;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("treatment never raises the reproduction number") {
  Rng rng(37);
  for (int rep = 0; rep < 20; ++rep) {
    const Params p = random_params(rng);
    const double wc = r0(p, R0Variant::with_control).r0;
    const double nc = r0(p, R0Variant::no_control).r0;
    CHECK(wc <= nc + 1e-12);
  }
}

TEST_CASE("default_starts is deterministic and positive") {
  const Params p = table4();
  const auto a = default_starts(p, 20, 42);
  const auto b = default_starts(p, 20, 42);
  const auto c = default_starts(p, 20, 43);
  REQUIRE(a.size() == 20);
  CHECK(a == b);
  CHECK(a != c);
  for (const State& s : a)
    for (double v : s) CHECK(v > 0.0);
}

TEST_CASE("endemic equilibrium exists above threshold and matches the verdict") {
  const Params p = table4();
  const auto eq = endemic_equilibrium(p, default_starts(p, 20, 42));
  REQUIRE(eq.has_value());
  CHECK(eq->residual_norm < 1e-10);
  CHECK(eq->stable);
  // Values pinned by an independent high-precision root solve.
  const State expected{10.4790987,   0.952257428,  0.137367276,
                       0.0043135778, 0.0263847514, 4.62250100e-4};
  for (int j = 0; j < 6; ++j)
    CHECK(std::abs(eq->state[j] - expected[j]) <= 1e-5 * (1.0 + expected[j]));

  const EquilibriumReport verdict = stability_verdict(p, eq->state);
  CHECK(verdict.stable);
  CHECK(verdict.eigen_real_parts[5] < 0.0);  // real parts sorted ascending
}

TEST_CASE("no endemic equilibrium below threshold") {
  const Params p = table3();
  CHECK_FALSE(endemic_equilibrium(p, default_starts(p, 20, 42)).has_value());
}

TEST_CASE("stability verdicts at the disease-free equilibrium") {
  const EquilibriumReport low = stability_verdict(table3(), dfe(table3()));
  CHECK(low.stable);
  for (int j = 1; j < 6; ++j)
    CHECK(low.eigen_real_parts[j] >= low.eigen_real_parts[j - 1]);

  const EquilibriumReport high = stability_verdict(table4(), dfe(table4()));
  CHECK_FALSE(high.stable);
  CHECK(high.eigen_real_parts[5] > 0.0);

  CHECK_THROWS_AS(
      stability_verdict(table3(), State{100.0, 100.0, 10.0, 10.0, 5.0, 5.0}),
      DomainError);
}

TEST_CASE("published closed-form endemic expressions evaluate finitely") {
  const ClosedFormE1 cf = closed_form_e1(table4());
  for (double v : cf.state) CHECK(std::isfinite(v));
  CHECK(std::isfinite(cf.residual_norm));
  CHECK(cf.residual_norm >= 0.0);
}

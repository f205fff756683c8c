// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "agesirs/types.h"

namespace agesirs {

enum class R0Variant { with_control, no_control };

// Next-generation-matrix result. `r0` is the closed-form spectral radius,
// `r0_matrix` the numerically computed spectral radius of F*V^-1; the two
// must agree to 1e-10.
struct R0Breakdown {
  double p = 0.0;  // 1/(d1+mu+u11), or 1/(d1+mu) without control
  double q = 0.0;  // 1/(d2+mu)
  double M = 0.0;  // discriminant term
  double r0 = 0.0;
  double r0_matrix = 0.0;
  R0Variant variant = R0Variant::with_control;
};

struct EquilibriumReport {
  State state{};
  double residual_norm = 0.0;  // max-abs of rhs at the state
  std::array<double, 6> eigen_real_parts{};
  bool stable = false;  // all real parts < 0
};

// Disease-free equilibrium (S1*, 0, 0, S2*, 0, 0).
State dfe(const Params& p);

R0Breakdown r0(const Params& p, R0Variant variant);

// Randomized positive starts, log-uniform over [1e-3, 1e3] times b1/mu.
std::vector<State> default_starts(const Params& p, int count,
                                  std::uint64_t seed);

// Damped-Newton root search over the supplied starts; returns the first
// (lowest start index) nonnegative root with I1+I2 > 1e-6 and max-abs
// residual < 1e-10, or nullopt when every start fails or lands on the DFE.
std::optional<EquilibriumReport> endemic_equilibrium(
    const Params& p, const std::vector<State>& starts);

// The published closed-form endemic-equilibrium expressions evaluated
// verbatim, with the field residual at that point. Diagnostic only.
struct ClosedFormE1 {
  State state{};
  double residual_norm = 0.0;
};
ClosedFormE1 closed_form_e1(const Params& p);

// Eigenvalue verdict at a purported equilibrium (residual must be < 1e-8).
EquilibriumReport stability_verdict(const Params& p, const State& state);

}  // namespace agesirs

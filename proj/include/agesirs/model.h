// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "agesirs/types.h"

namespace agesirs {

template <std::size_t N>
struct Series;  // defined in integrator.h
using Trajectory = Series<6>;

using Matrix6 = std::array<std::array<double, 6>, 6>;  // J[i][j] = df_i/dx_j

// Controlled vector field of the six-compartment system.
// Rejects non-finite inputs with DomainError.
State rhs(const State& y, const Params& p, const ControlPair& u);

// Saturated treatment response u12 * I2^2 / (1 + alpha * I2^2).
double holling_treatment(double I2, double u12, double alpha);

// Central-difference Jacobian of rhs, step h_scale*max(1,|x_j|) per column.
Matrix6 numerical_jacobian(const State& y, const Params& p,
                           const ControlPair& u, double h_scale = 1e-6);

// Generic central-difference Jacobian of an arbitrary 6-vector field;
// exact (to roundoff) for linear fields.
template <class F>
Matrix6 numerical_jacobian_of(F&& field, const State& y,
                              double h_scale = 1e-6) {
  if (!(h_scale > 0.0)) throw DomainError("numerical_jacobian: h must be > 0");
  Matrix6 J{};
  for (int j = 0; j < 6; ++j) {
    double h = h_scale * std::max(1.0, std::abs(y[j]));
    State yp = y, ym = y;
    yp[j] += h;
    ym[j] -= h;
    State fp = field(yp), fm = field(ym);
    for (int i = 0; i < 6; ++i) J[i][j] = (fp[i] - fm[i]) / (2.0 * h);
  }
  return J;
}

// Feasibility report for a trajectory: componentwise positivity and the
// population bound N(t) <= max(N(0), b1/mu), both within `tol`.
struct FeasibilityReport {
  bool feasible = true;
  std::array<double, 6> min_component{};  // min over time, per compartment
  double max_total = 0.0;                 // max over time of N(t)
  double bound = 0.0;                     // max(N(0), b1/mu)
  std::int64_t first_bad_index = -1;      // node of first violation, or -1
  std::string detail;
};

FeasibilityReport check_feasible(const Trajectory& traj, const Params& p,
                                 double tol = 1e-9);

}  // namespace agesirs

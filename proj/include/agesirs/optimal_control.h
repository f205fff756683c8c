// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "agesirs/integrator.h"
#include "agesirs/types.h"

namespace agesirs {

struct CostWeights {
  double A1 = 1e-4;  // weight on u11^2
  double A2 = 5e-3;  // weight on u12^2
  bool operator==(const CostWeights&) const = default;
};

struct ControlBounds {
  double u11_max = 1.0;
  double u12_max = 1.0;
  bool operator==(const ControlBounds&) const = default;
};

struct SweepSettings {
  int max_iters = 500;
  double tol = 1e-4;        // relative-change convergence threshold
  double relaxation = 0.5;  // blend factor for control updates
  bool operator==(const SweepSettings&) const = default;
};

// Node-wise control values on the shared grid.
struct ControlSchedule {
  Grid grid;
  std::vector<double> u11;  // n_steps + 1 entries
  std::vector<double> u12;
};

struct FbsResult {
  ControlSchedule controls;
  Trajectory states;
  Series<6> adjoints;
  double cost = 0.0;
  int iters = 0;
  bool converged = false;
};

// Objective: trapezoidal integral of A1*u11^2 + A2*u12^2 + I1 + I2.
double cost(const Trajectory& states, const ControlSchedule& controls,
            const CostWeights& w);

// H = I1 + I2 + A1*u11^2 + A2*u12^2 + lam . f(y, u).
double hamiltonian(const State& y, const Adjoint& lam, const ControlPair& u,
                   const Params& p, const CostWeights& w);

// Costate field -dH/dy (analytic; the saturated-treatment derivative is
// 2*u12*I2/(1+alpha*I2^2)^2).
Adjoint adjoint_rhs(const State& y, const Adjoint& lam, const ControlPair& u,
                    const Params& p);

// Projected stationary controls:
//   u11 = clamp((lamI1-lamR1)*I1 / (2*A1), 0, u11_max)
//   u12 = clamp((lamI2-lamR2)*I2^2 / (2*A2*(1+alpha*I2^2)), 0, u12_max)
ControlPair control_update(const State& y, const Adjoint& lam,
                           const CostWeights& w, const ControlBounds& b,
                           double alpha);

// Forward RK4 of the state under a node-wise control schedule; RK4 stages
// use the node value at the step ends and the endpoint average at midpoints.
Trajectory integrate_states(const Params& p, const State& y0, const Grid& g,
                            const std::vector<double>& u11s,
                            const std::vector<double>& u12s);

// Matching backward RK4 of the costate from lam(T) = 0.
Series<6> integrate_adjoints(const Params& p, const Trajectory& states,
                             const std::vector<double>& u11s,
                             const std::vector<double>& u12s);

// Forward-backward sweep with relaxed projected updates. Masked controls
// (per strategy) are held at zero through every iteration.
FbsResult forward_backward_sweep(const Params& p, const State& y0,
                                 const Grid& g, const CostWeights& w,
                                 const ControlBounds& b, Strategy strategy,
                                 const SweepSettings& settings);

struct GradientCheckReport {
  double adjoint_value = 0.0;  // integral of (dH/du . du) along the sweep
  double fd_value = 0.0;       // central difference of J
  double abs_err = 0.0;
  double rel_err = 0.0;
};

// Validates the Pontryagin machinery: adjoint-based directional derivative
// of J against a central finite difference along `direction`.
GradientCheckReport gradient_check(const Params& p, const State& y0,
                                   const Grid& g, const CostWeights& w,
                                   const ControlBounds& b,
                                   const ControlSchedule& controls,
                                   const ControlSchedule& direction,
                                   double eps);

}  // namespace agesirs

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "agesirs/integrator.h"
#include "agesirs/optimal_control.h"
#include "agesirs/types.h"

namespace agesirs {

struct StrategyOutcome {
  Strategy strategy = Strategy::none;
  double avg_I1 = 0.0, avg_I2 = 0.0, avg_R1 = 0.0, avg_R2 = 0.0;
  double burden = 0.0;  // integral of I1+I2 (person-days)
  double J = 0.0;
  int iters = 0;
  bool converged = false;
};

// Trapezoidal integral of I1(t) + I2(t) over the grid.
double cumulative_burden(const Trajectory& traj);

// Time-averaged compartments, burden and cost of one converged sweep run.
StrategyOutcome summarize_run(Strategy s, const FbsResult& r);

// Runs the sweep for all four strategies on one scenario; averages are
// arithmetic means over grid nodes including endpoints.
std::array<StrategyOutcome, 4> strategy_comparison(
    const Params& p, const State& y0, const Grid& g, const CostWeights& w,
    const ControlBounds& b, const SweepSettings& settings);

// Scales (beta1..beta4) by a common factor, root-found so that the
// no-control reproduction number hits `target_r0` within 1e-8.
Params scale_betas_to_r0(const Params& base, double target_r0);

// One (study, strategy, r0, alpha) cell of the batch experiments.
struct BurdenPoint {
  std::string study;  // "r0-sweep" or "alpha-sweep"
  Strategy strategy = Strategy::none;
  double r0_target = 0.0;
  double alpha = 0.0;
  double avg_I1 = 0.0, avg_I2 = 0.0, avg_R1 = 0.0, avg_R2 = 0.0;
  double burden = 0.0;     // integral of I1+I2
  double burden_I1 = 0.0;  // integral of I1 alone
  double burden_I2 = 0.0;  // integral of I2 alone
  double J = 0.0;
  int iters = 0;
  bool converged = false;
};

std::vector<BurdenPoint> r0_sweep(const Params& base,
                                  const std::vector<double>& r0_values,
                                  const std::vector<Strategy>& strategies,
                                  const State& y0, const Grid& g,
                                  const CostWeights& w, const ControlBounds& b,
                                  const SweepSettings& settings);

std::vector<BurdenPoint> alpha_sweep(const Params& base,
                                     const std::vector<double>& alpha_values,
                                     Strategy strategy,
                                     const std::vector<double>& r0_values,
                                     const State& y0, const Grid& g,
                                     const CostWeights& w,
                                     const ControlBounds& b,
                                     const SweepSettings& settings);

}  // namespace agesirs

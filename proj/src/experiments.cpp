// SPDX-License-Identifier: Apache-2.0
#include "agesirs/experiments.h"

#include <cmath>

#include "agesirs/model.h"
#include "agesirs/reproduction.h"

namespace agesirs {

namespace {

double trapz_component(const Trajectory& traj, int j1, int j2) {
  const auto& s = traj.samples;
  auto val = [&](std::size_t k) {
    return j2 < 0 ? s[k][j1] : s[k][j1] + s[k][j2];
  };
  double acc = 0.5 * (val(0) + val(s.size() - 1));
  for (std::size_t k = 1; k + 1 < s.size(); ++k) acc += val(k);
  return acc * traj.grid.h();
}

}  // namespace

double cumulative_burden(const Trajectory& traj) {
  if (traj.samples.empty())
    throw DomainError("cumulative_burden: empty trajectory");
  return trapz_component(traj, iI1, iI2);
}

StrategyOutcome summarize_run(Strategy s, const FbsResult& r) {
  StrategyOutcome o;
  o.strategy = s;
  const auto& ys = r.states.samples;
  const double inv = 1.0 / static_cast<double>(ys.size());
  for (const State& y : ys) {
    o.avg_I1 += y[iI1];
    o.avg_I2 += y[iI2];
    o.avg_R1 += y[iR1];
    o.avg_R2 += y[iR2];
  }
  o.avg_I1 *= inv;
  o.avg_I2 *= inv;
  o.avg_R1 *= inv;
  o.avg_R2 *= inv;
  o.burden = cumulative_burden(r.states);
  o.J = r.cost;
  o.iters = r.iters;
  o.converged = r.converged;
  return o;
}

std::array<StrategyOutcome, 4> strategy_comparison(
    const Params& p, const State& y0, const Grid& g, const CostWeights& w,
    const ControlBounds& b, const SweepSettings& settings) {
  const Strategy order[4] = {Strategy::none, Strategy::u11_only,
                             Strategy::u12_only, Strategy::both};
  std::array<StrategyOutcome, 4> out;
  for (int i = 0; i < 4; ++i) {
    FbsResult r = forward_backward_sweep(p, y0, g, w, b, order[i], settings);
    out[i] = summarize_run(order[i], r);
  }
  return out;
}

Params scale_betas_to_r0(const Params& base, double target_r0) {
  validate(base);
  if (!(target_r0 > 0.0))
    throw DomainError("scale_betas_to_r0: target must be > 0");
  const double base_r0 = r0(base, R0Variant::no_control).r0;
  if (!(base_r0 > 0.0))
    throw DomainError("scale_betas_to_r0: baseline no-control r0 is 0");

  auto scaled = [&](double k) {
    Params p = base;
    p.beta1 *= k;
    p.beta2 *= k;
    p.beta3 *= k;
    p.beta4 *= k;
    return p;
  };
  auto g = [&](double k) {
    return r0(scaled(k), R0Variant::no_control).r0 - target_r0;
  };

  // Secant iteration; the map is linear in the common factor, so this
  // terminates almost immediately, but stays honest if that ever changes.
  double ka = 0.9 * target_r0 / base_r0, kb = 1.1 * target_r0 / base_r0;
  double fa = g(ka), fb = g(kb);
  for (int it = 0; it < 100; ++it) {
    if (std::abs(fb) <= 1e-8) return scaled(kb);
    const double denom = fb - fa;
    if (denom == 0.0) break;
    const double kn = kb - fb * (kb - ka) / denom;
    ka = kb;
    fa = fb;
    kb = kn;
    fb = g(kb);
  }
  if (std::abs(fb) <= 1e-8) return scaled(kb);
  throw DomainError("scale_betas_to_r0: root search did not converge");
}

namespace {

BurdenPoint cell(const std::string& study, Strategy s, double r0_target,
                 double alpha, const Params& p, const State& y0, const Grid& g,
                 const CostWeights& w, const ControlBounds& b,
                 const SweepSettings& settings) {
  FbsResult r = forward_backward_sweep(p, y0, g, w, b, s, settings);
  StrategyOutcome o = summarize_run(s, r);
  BurdenPoint bp;
  bp.study = study;
  bp.strategy = s;
  bp.r0_target = r0_target;
  bp.alpha = alpha;
  bp.avg_I1 = o.avg_I1;
  bp.avg_I2 = o.avg_I2;
  bp.avg_R1 = o.avg_R1;
  bp.avg_R2 = o.avg_R2;
  bp.burden = o.burden;
  bp.burden_I1 = trapz_component(r.states, iI1, -1);
  bp.burden_I2 = trapz_component(r.states, iI2, -1);
  bp.J = o.J;
  bp.iters = o.iters;
  bp.converged = o.converged;
  return bp;
}

}  // namespace

std::vector<BurdenPoint> r0_sweep(const Params& base,
                                  const std::vector<double>& r0_values,
                                  const std::vector<Strategy>& strategies,
                                  const State& y0, const Grid& g,
                                  const CostWeights& w, const ControlBounds& b,
                                  const SweepSettings& settings) {
  std::vector<BurdenPoint> out;
  for (double target : r0_values) {
    const Params p = scale_betas_to_r0(base, target);
    for (Strategy s : strategies)
      out.push_back(
          cell("r0-sweep", s, target, base.alpha, p, y0, g, w, b, settings));
  }
  return out;
}

std::vector<BurdenPoint> alpha_sweep(const Params& base,
                                     const std::vector<double>& alpha_values,
                                     Strategy strategy,
                                     const std::vector<double>& r0_values,
                                     const State& y0, const Grid& g,
                                     const CostWeights& w,
                                     const ControlBounds& b,
                                     const SweepSettings& settings) {
  std::vector<BurdenPoint> out;
  for (double target : r0_values) {
    const Params scaled = scale_betas_to_r0(base, target);
    for (double a : alpha_values) {
      if (a < 0.0) throw DomainError("alpha_sweep: alpha must be >= 0");
      Params p = scaled;
      p.alpha = a;
      out.push_back(
          cell("alpha-sweep", strategy, target, a, p, y0, g, w, b, settings));
    }
  }
  return out;
}

}  // namespace agesirs

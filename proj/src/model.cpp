// SPDX-License-Identifier: Apache-2.0
#include "agesirs/model.h"

#include <cmath>
#include <limits>

#include "agesirs/integrator.h"
#include "agesirs/kernel.h"

namespace agesirs {

namespace {
void require_finite(const State& y, const char* what) {
  for (double v : y)
    if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite input");
}
}  // namespace

void validate(const Params& p) {
  const struct {
    const char* name;
    double value;
  } fields[] = {
      {"params.b1", p.b1},       {"params.delta1", p.delta1},
      {"params.delta2", p.delta2}, {"params.beta1", p.beta1},
      {"params.beta2", p.beta2}, {"params.beta3", p.beta3},
      {"params.beta4", p.beta4}, {"params.mu", p.mu},
      {"params.d1", p.d1},       {"params.d2", p.d2},
      {"params.u11", p.u11},     {"params.u12", p.u12},
      {"params.alpha", p.alpha}, {"params.m", p.m},
  };
  for (const auto& f : fields) {
    if (!std::isfinite(f.value) || f.value < 0.0)
      throw DomainError(std::string(f.name) + " must be finite and >= 0");
  }
  if (!(p.mu > 0.0))
    throw DomainError("params.mu must be > 0 (population bound b1/mu)");
}

void validate(const Grid& g) {
  if (!std::isfinite(g.t0) || !std::isfinite(g.T))
    throw DomainError("grid.t0/grid.T must be finite");
  if (!(g.T > g.t0)) throw DomainError("grid.T must be > grid.t0");
  if (g.n_steps < 1) throw DomainError("grid.steps must be >= 1");
}

void validate_state(const State& y) {
  for (int j = 0; j < 6; ++j) {
    if (!std::isfinite(y[j]))
      throw DomainError(std::string("y0.") + kStateNames[j] + " must be finite");
    if (y[j] < 0.0)
      throw DomainError(std::string("y0.") + kStateNames[j] + " must be >= 0");
  }
}

Params table2() { return Params{}; }

Params table3() {
  Params p;
  p.b1 = 0.007192;
  return p;
}

Params table4() {
  Params p;
  p.beta1 = 0.0133;
  p.mu = 0.62;
  p.alpha = 0.5;
  p.m = 0.00182;
  return p;
}

State rhs(const State& y, const Params& p, const ControlPair& u) {
  require_finite(y, "rhs");
  if (!std::isfinite(u.u11) || !std::isfinite(u.u12))
    throw DomainError("rhs: non-finite control");
  State dy;
  const auto c = rate_constants(p);
  model_rates(y.data(), c, u.u11, u.u12, dy.data());
  return dy;
}

double holling_treatment(double I2, double u12, double alpha) {
  if (!std::isfinite(I2) || !std::isfinite(u12) || !std::isfinite(alpha))
    throw DomainError("holling_treatment: non-finite input");
  const double i2sq = I2 * I2;
  return u12 * i2sq / (1.0 + alpha * i2sq);
}

Matrix6 numerical_jacobian(const State& y, const Params& p,
                           const ControlPair& u, double h_scale) {
  return numerical_jacobian_of(
      [&](const State& x) { return rhs(x, p, u); }, y, h_scale);
}

FeasibilityReport check_feasible(const Trajectory& traj, const Params& p,
                                 double tol) {
  if (traj.samples.empty()) throw DomainError("check_feasible: empty trajectory");
  FeasibilityReport rep;
  rep.min_component.fill(std::numeric_limits<double>::infinity());
  double n0 = 0.0;
  for (double v : traj.samples[0]) n0 += v;
  rep.bound = std::max(n0, p.b1 / p.mu);
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const State& y = traj.samples[k];
    double n = 0.0;
    for (int j = 0; j < 6; ++j) {
      n += y[j];
      if (y[j] < rep.min_component[j]) rep.min_component[j] = y[j];
      if (rep.feasible && y[j] < -tol) {
        rep.feasible = false;
        rep.first_bad_index = static_cast<std::int64_t>(k);
        rep.detail = std::string(kStateNames[j]) + " negative at node " +
                     std::to_string(k);
      }
    }
    if (n > rep.max_total) rep.max_total = n;
    if (rep.feasible && n > rep.bound + tol) {
      rep.feasible = false;
      rep.first_bad_index = static_cast<std::int64_t>(k);
      rep.detail = "N(t) exceeds max(N(0), b1/mu) at node " + std::to_string(k);
    }
  }
  return rep;
}

}  // namespace agesirs

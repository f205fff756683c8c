// SPDX-License-Identifier: Apache-2.0
#include "agesirs/optimal_control.h"

#include <algorithm>
#include <cmath>

#include "agesirs/kernel.h"
#include "agesirs/model.h"

namespace agesirs {

namespace {

double trapz(const std::vector<double>& vals, double h) {
  double s = 0.5 * (vals.front() + vals.back());
  for (std::size_t i = 1; i + 1 < vals.size(); ++i) s += vals[i];
  return s * h;
}

void require_nodes(const Grid& g, const std::vector<double>& series,
                   const char* what) {
  if (series.size() != static_cast<std::size_t>(g.n_steps) + 1)
    throw DomainError(std::string(what) + ": schedule length != n_steps+1");
}

}  // namespace

double cost(const Trajectory& states, const ControlSchedule& controls,
            const CostWeights& w) {
  if (!(states.grid == controls.grid))
    throw DomainError("cost: state and control grids differ");
  require_nodes(states.grid, controls.u11, "cost");
  require_nodes(states.grid, controls.u12, "cost");
  const std::size_t nn = states.samples.size();
  std::vector<double> integrand(nn);
  for (std::size_t k = 0; k < nn; ++k) {
    const double a = controls.u11[k], b = controls.u12[k];
    integrand[k] = w.A1 * a * a + w.A2 * b * b + states.samples[k][iI1] +
                   states.samples[k][iI2];
  }
  return trapz(integrand, states.grid.h());
}

double hamiltonian(const State& y, const Adjoint& lam, const ControlPair& u,
                   const Params& p, const CostWeights& w) {
  const State f = rhs(y, p, u);
  double h = y[iI1] + y[iI2] + w.A1 * u.u11 * u.u11 + w.A2 * u.u12 * u.u12;
  for (int j = 0; j < 6; ++j) h += lam[j] * f[j];
  return h;
}

Adjoint adjoint_rhs(const State& y, const Adjoint& lam, const ControlPair& u,
                    const Params& p) {
  const double S1 = y[iS1], I1 = y[iI1], S2 = y[iS2], I2 = y[iI2];
  const double lS1 = lam[iS1], lI1 = lam[iI1], lR1 = lam[iR1];
  const double lS2 = lam[iS2], lI2 = lam[iI2], lR2 = lam[iR2];
  const double den = 1.0 + p.alpha * I2 * I2;
  const double gp = 2.0 * u.u12 * I2 / (den * den);  // d/dI2 of the treatment
  Adjoint out;
  out[iS1] = lS1 * (p.beta1 * I1 + p.beta2 * I2 + p.mu + p.m) -
             lI1 * (p.beta1 * I1 + p.beta2 * I2) - lS2 * p.m;
  out[iI1] = -1.0 + lS1 * p.beta1 * S1 -
             lI1 * (p.beta1 * S1 - p.d1 - p.mu - u.u11) - lR1 * u.u11 +
             lS2 * p.beta3 * S2 - lI2 * p.beta3 * S2;
  out[iR1] = -lS1 * p.delta1 + lR1 * (p.mu + p.delta1 + p.m) - lR2 * p.m;
  out[iS2] = lS2 * (p.beta3 * I1 + p.beta4 * I2 + p.mu) -
             lI2 * (p.beta3 * I1 + p.beta4 * I2);
  out[iI2] = -1.0 + lS1 * p.beta2 * S1 - lI1 * p.beta2 * S1 +
             lS2 * p.beta4 * S2 - lI2 * (p.beta4 * S2 - p.d2 - p.mu - gp) -
             lR2 * gp;
  out[iR2] = -lS2 * p.delta2 + lR2 * (p.mu + p.delta2);
  return out;
}

ControlPair control_update(const State& y, const Adjoint& lam,
                           const CostWeights& w, const ControlBounds& b,
                           double alpha) {
  if (!(w.A1 > 0.0 && w.A2 > 0.0))
    throw DomainError("control_update: weights must be > 0");
  const double I1 = y[iI1], I2 = y[iI2];
  ControlPair u;
  const double raw1 = (lam[iI1] - lam[iR1]) * I1 / (2.0 * w.A1);
  u.u11 = std::min(std::max(raw1, 0.0), b.u11_max);
  const double raw2 = (lam[iI2] - lam[iR2]) * I2 * I2 /
                      (2.0 * w.A2 * (1.0 + alpha * I2 * I2));
  u.u12 = std::min(std::max(raw2, 0.0), b.u12_max);
  return u;
}

Trajectory integrate_states(const Params& p, const State& y0, const Grid& g,
                            const std::vector<double>& u11s,
                            const std::vector<double>& u12s) {
  validate(g);
  require_nodes(g, u11s, "integrate_states");
  require_nodes(g, u12s, "integrate_states");
  const auto c = rate_constants(p);
  const double h = g.h();
  Trajectory out;
  out.grid = g;
  out.samples.resize(static_cast<std::size_t>(g.n_steps) + 1);
  out.samples[0] = y0;
  double k1[6], k2[6], k3[6], k4[6], tmp[6];
  for (std::int64_t k = 0; k < g.n_steps; ++k) {
    const auto& y = out.samples[static_cast<std::size_t>(k)];
    const double ua = u11s[k], ub = u11s[k + 1], um = 0.5 * (ua + ub);
    const double va = u12s[k], vb = u12s[k + 1], vm = 0.5 * (va + vb);
    model_rates(y.data(), c, ua, va, k1);
    for (int j = 0; j < 6; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
    model_rates(tmp, c, um, vm, k2);
    for (int j = 0; j < 6; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
    model_rates(tmp, c, um, vm, k3);
    for (int j = 0; j < 6; ++j) tmp[j] = y[j] + h * k3[j];
    model_rates(tmp, c, ub, vb, k4);
    auto& yn = out.samples[static_cast<std::size_t>(k) + 1];
    for (int j = 0; j < 6; ++j)
      yn[j] = y[j] + (h / 6.0) * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
    if (!detail::all_finite(yn))
      throw IntegrationError("integrate_states: non-finite state", k + 1);
  }
  return out;
}

Series<6> integrate_adjoints(const Params& p, const Trajectory& states,
                             const std::vector<double>& u11s,
                             const std::vector<double>& u12s) {
  const Grid& g = states.grid;
  require_nodes(g, u11s, "integrate_adjoints");
  require_nodes(g, u12s, "integrate_adjoints");
  const double h = g.h();
  Series<6> out;
  out.grid = g;
  out.samples.resize(static_cast<std::size_t>(g.n_steps) + 1);
  out.samples.back().fill(0.0);  // transversality lam(T) = 0
  Adjoint s2, s3, s4;
  State xm;
  for (std::int64_t k = g.n_steps; k > 0; --k) {
    const Adjoint& lam = out.samples[static_cast<std::size_t>(k)];
    const State& xa = states.samples[static_cast<std::size_t>(k)];
    const State& xb = states.samples[static_cast<std::size_t>(k) - 1];
    for (int j = 0; j < 6; ++j) xm[j] = 0.5 * (xa[j] + xb[j]);
    const double ua = u11s[k], ub = u11s[k - 1], um = 0.5 * (ua + ub);
    const double va = u12s[k], vb = u12s[k - 1], vm = 0.5 * (va + vb);
    const Adjoint k1 = adjoint_rhs(xa, lam, {ua, va}, p);
    for (int j = 0; j < 6; ++j) s2[j] = lam[j] - 0.5 * h * k1[j];
    const Adjoint k2 = adjoint_rhs(xm, s2, {um, vm}, p);
    for (int j = 0; j < 6; ++j) s3[j] = lam[j] - 0.5 * h * k2[j];
    const Adjoint k3 = adjoint_rhs(xm, s3, {um, vm}, p);
    for (int j = 0; j < 6; ++j) s4[j] = lam[j] - h * k3[j];
    const Adjoint k4 = adjoint_rhs(xb, s4, {ub, vb}, p);
    auto& ln = out.samples[static_cast<std::size_t>(k) - 1];
    for (int j = 0; j < 6; ++j)
      ln[j] = lam[j] - (h / 6.0) * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
    if (!detail::all_finite(ln))
      throw IntegrationError("integrate_adjoints: non-finite costate", k - 1);
  }
  return out;
}

FbsResult forward_backward_sweep(const Params& p, const State& y0,
                                 const Grid& g, const CostWeights& w,
                                 const ControlBounds& b, Strategy strategy,
                                 const SweepSettings& settings) {
  validate(p);
  validate(g);
  validate_state(y0);
  if (!(b.u11_max > 0.0 && b.u12_max > 0.0))
    throw DomainError("bounds.u11_max/u12_max must be > 0");
  if (settings.max_iters < 1) throw DomainError("sweep.max_iters must be >= 1");
  if (!(settings.tol > 0.0)) throw DomainError("sweep.tol must be > 0");
  if (!(settings.relaxation > 0.0 && settings.relaxation <= 1.0))
    throw DomainError("sweep.relaxation must be in (0, 1]");

  const bool use11 =
      strategy == Strategy::u11_only || strategy == Strategy::both;
  const bool use12 =
      strategy == Strategy::u12_only || strategy == Strategy::both;
  const std::size_t nn = static_cast<std::size_t>(g.n_steps) + 1;

  FbsResult res;
  res.controls.grid = g;
  res.controls.u11.assign(nn, 0.0);
  res.controls.u12.assign(nn, 0.0);
  auto& u11s = res.controls.u11;
  auto& u12s = res.controls.u12;
  res.states = integrate_states(p, y0, g, u11s, u12s);

  std::vector<double> u11n(nn), u12n(nn);
  const double relax = settings.relaxation;
  while (res.iters < settings.max_iters) {
    ++res.iters;
    res.adjoints = integrate_adjoints(p, res.states, u11s, u12s);
    for (std::size_t k = 0; k < nn; ++k) {
      const ControlPair upd = control_update(res.states.samples[k],
                                             res.adjoints.samples[k], w, b,
                                             p.alpha);
      u11n[k] = use11 ? upd.u11 : 0.0;
      u12n[k] = use12 ? upd.u12 : 0.0;
    }
    double du = 0.0;
    for (std::size_t k = 0; k < nn; ++k) {
      const double a = relax * u11n[k] + (1.0 - relax) * u11s[k];
      const double v = relax * u12n[k] + (1.0 - relax) * u12s[k];
      du = std::max(du, std::abs(a - u11s[k]) / (1.0 + std::abs(a)));
      du = std::max(du, std::abs(v - u12s[k]) / (1.0 + std::abs(v)));
      u11s[k] = a;
      u12s[k] = v;
    }
    Trajectory next = integrate_states(p, y0, g, u11s, u12s);
    double dx = 0.0;
    for (std::size_t k = 0; k < nn; ++k)
      for (int j = 0; j < 6; ++j)
        dx = std::max(dx, std::abs(next.samples[k][j] - res.states.samples[k][j]) /
                              (1.0 + std::abs(next.samples[k][j])));
    res.states = std::move(next);
    if (du < settings.tol && dx < settings.tol) {
      res.converged = true;
      break;
    }
  }
  res.cost = cost(res.states, res.controls, w);
  return res;
}

GradientCheckReport gradient_check(const Params& p, const State& y0,
                                   const Grid& g, const CostWeights& w,
                                   const ControlBounds& b,
                                   const ControlSchedule& controls,
                                   const ControlSchedule& direction,
                                   double eps) {
  if (!(eps > 0.0)) throw DomainError("gradient_check: eps must be > 0");
  if (!(controls.grid == g) || !(direction.grid == g))
    throw DomainError("gradient_check: grid mismatch");
  require_nodes(g, controls.u11, "gradient_check");
  require_nodes(g, controls.u12, "gradient_check");
  require_nodes(g, direction.u11, "gradient_check");
  require_nodes(g, direction.u12, "gradient_check");
  (void)b;  // bounds are the caller's interiority responsibility
  const std::size_t nn = static_cast<std::size_t>(g.n_steps) + 1;

  // Adjoint route: integral of dH/du . du along the nominal trajectory.
  Trajectory ys = integrate_states(p, y0, g, controls.u11, controls.u12);
  Series<6> ls = integrate_adjoints(p, ys, controls.u11, controls.u12);
  std::vector<double> integrand(nn);
  for (std::size_t k = 0; k < nn; ++k) {
    const State& y = ys.samples[k];
    const Adjoint& lam = ls.samples[k];
    const double I1 = y[iI1], I2 = y[iI2];
    const double dHdu11 =
        2.0 * w.A1 * controls.u11[k] - (lam[iI1] - lam[iR1]) * I1;
    const double dHdu12 = 2.0 * w.A2 * controls.u12[k] -
                          (lam[iI2] - lam[iR2]) * I2 * I2 /
                              (1.0 + p.alpha * I2 * I2);
    integrand[k] = dHdu11 * direction.u11[k] + dHdu12 * direction.u12[k];
  }
  GradientCheckReport rep;
  rep.adjoint_value = trapz(integrand, g.h());

  // Central-difference route on J.
  auto j_of = [&](double sign) {
    std::vector<double> a(nn), v(nn);
    for (std::size_t k = 0; k < nn; ++k) {
      a[k] = controls.u11[k] + sign * eps * direction.u11[k];
      v[k] = controls.u12[k] + sign * eps * direction.u12[k];
    }
    ControlSchedule cs{g, std::move(a), std::move(v)};
    Trajectory t = integrate_states(p, y0, g, cs.u11, cs.u12);
    return cost(t, cs, w);
  };
  rep.fd_value = (j_of(1.0) - j_of(-1.0)) / (2.0 * eps);
  rep.abs_err = std::abs(rep.adjoint_value - rep.fd_value);
  rep.rel_err = rep.abs_err / std::max({1e-12, std::abs(rep.adjoint_value),
                                        std::abs(rep.fd_value)});
  return rep;
}

}  // namespace agesirs

// SPDX-License-Identifier: Apache-2.0
#include "agesirs/reproduction.h"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "agesirs/integrator.h"
#include "agesirs/model.h"

namespace agesirs {

namespace {

double residual_max_abs(const Params& p, const State& y) {
  State f = rhs(y, p, {p.u11, p.u12});
  double r = 0.0;
  for (double v : f) r = std::max(r, std::abs(v));
  return r;
}

std::array<double, 6> sorted_real_parts(const Matrix6& J) {
  Eigen::Matrix<double, 6, 6> A;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) A(i, j) = J[i][j];
  Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> es(A, false);
  std::array<double, 6> re{};
  for (int i = 0; i < 6; ++i) re[i] = es.eigenvalues()[i].real();
  std::sort(re.begin(), re.end());
  return re;
}

}  // namespace

State dfe(const Params& p) {
  validate(p);
  State e0{};
  e0[iS1] = p.b1 / (p.mu + p.m);
  e0[iS2] = p.b1 * p.m / (p.mu * (p.mu + p.m));
  return e0;
}

R0Breakdown r0(const Params& params, R0Variant variant) {
  validate(params);
  R0Breakdown out;
  out.variant = variant;
  const State e0 = dfe(params);
  const double S1 = e0[iS1], S2 = e0[iS2];
  const double p = variant == R0Variant::with_control
                       ? 1.0 / (params.d1 + params.mu + params.u11)
                       : 1.0 / (params.d1 + params.mu);
  const double q = 1.0 / (params.d2 + params.mu);
  const double a = params.beta1 * S1 * p;
  const double d = params.beta4 * S2 * q;
  out.p = p;
  out.q = q;
  out.M = (a - d) * (a - d) + 4.0 * S1 * S2 * params.beta2 * params.beta3 * p * q;
  out.r0 = ((a + d) + std::sqrt(out.M)) / 2.0;

  // Cross-validation: spectral radius of F*V^-1 via the 2x2 eigenproblem.
  Eigen::Matrix2d F, V;
  F << params.beta1 * S1, params.beta2 * S1, params.beta3 * S2,
      params.beta4 * S2;
  V << 1.0 / p, 0.0, 0.0, 1.0 / q;
  Eigen::Matrix2d K = F * V.inverse();
  auto ev = K.eigenvalues();
  out.r0_matrix = std::max(std::abs(ev[0]), std::abs(ev[1]));
  return out;
}

std::vector<State> default_starts(const Params& p, int count,
                                  std::uint64_t seed) {
  validate(p);
  Rng rng(seed);
  const double scale = p.b1 / p.mu;
  std::vector<State> starts(static_cast<std::size_t>(count));
  for (auto& s : starts)
    for (int j = 0; j < 6; ++j)
      s[j] = scale * std::pow(10.0, rng.uniform(-3.0, 3.0));
  return starts;
}

std::optional<EquilibriumReport> endemic_equilibrium(
    const Params& p, const std::vector<State>& starts) {
  validate(p);
  const ControlPair u{p.u11, p.u12};
  auto f_of = [&](const State& x) { return rhs(x, p, u); };
  auto norm_of = [&](const State& f) {
    double r = 0.0;
    for (double v : f) r = std::max(r, std::abs(v));
    return r;
  };

  for (const State& start : starts) {
    State x = start;
    bool bad = false;
    for (double v : x)
      if (!std::isfinite(v)) bad = true;
    if (bad) continue;
    double fnorm = norm_of(f_of(x));
    for (int iter = 0; iter < 200 && fnorm >= 1e-10; ++iter) {
      Matrix6 J = numerical_jacobian(x, p, u);
      Eigen::Matrix<double, 6, 6> A;
      Eigen::Matrix<double, 6, 1> b;
      State f = f_of(x);
      for (int i = 0; i < 6; ++i) {
        b(i) = -f[i];
        for (int j = 0; j < 6; ++j) A(i, j) = J[i][j];
      }
      Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(A);
      if (!lu.isInvertible()) break;
      Eigen::Matrix<double, 6, 1> dx = lu.solve(b);
      // Backtracking on the residual norm.
      double s = 1.0;
      State xn;
      double fn = fnorm;
      while (s >= 1e-6) {
        for (int j = 0; j < 6; ++j) xn[j] = x[j] + s * dx(j);
        bool finite = true;
        for (double v : xn)
          if (!std::isfinite(v)) finite = false;
        if (finite) {
          fn = norm_of(f_of(xn));
          if (fn < fnorm) break;
        }
        s *= 0.5;
      }
      if (s < 1e-6 || fn >= fnorm) break;  // stalled
      x = xn;
      fnorm = fn;
    }
    if (fnorm < 1e-10) {
      bool nonneg = true;
      for (double v : x)
        if (v < -1e-9) nonneg = false;
      if (!nonneg) continue;
      for (double& v : x)
        if (v < 0.0) v = 0.0;
      if (x[iI1] + x[iI2] <= 1e-6) continue;  // DFE, not endemic
      EquilibriumReport rep;
      rep.state = x;
      rep.residual_norm = residual_max_abs(p, x);
      rep.eigen_real_parts = sorted_real_parts(numerical_jacobian(x, p, u));
      rep.stable = rep.eigen_real_parts[5] < 0.0;
      return rep;
    }
  }
  return std::nullopt;
}

ClosedFormE1 closed_form_e1(const Params& p) {
  validate(p);
  // Published expressions, evaluated verbatim (diagnostic only).
  const double A = (p.b1 - p.d1 - p.mu - p.u11) / (p.mu + p.m);
  const double B = p.delta1 / (p.mu + p.m);
  const double R1 = p.u11 / (p.mu + p.delta1 + p.m);
  const double AB = A + B * R1;
  const double S1 = ((p.b1 - p.d1 - p.mu - p.u11) + p.delta1 * R1) / (p.mu + p.m);
  const double I1 = (p.beta1 * AB + p.beta2 * AB) / (p.d1 + p.mu + p.u11);
  const double I2 =
      (p.b1 + p.delta1 * R1 - p.beta1 * AB - (p.mu + p.m) * AB) / (p.beta2 * AB);
  const double R2 = (p.m * R1 + p.u12 * I2 * I2 / (1.0 + p.alpha * I2 * I2)) /
                    (p.mu + p.delta2);
  const double S2 = (p.m * AB + p.delta2 * R2) / (p.beta3 + p.beta4 * I2 + p.mu);
  ClosedFormE1 out;
  out.state = {S1, I1, R1, S2, I2, R2};
  bool finite = true;
  for (double v : out.state)
    if (!std::isfinite(v)) finite = false;
  if (!finite) {
    out.residual_norm = std::numeric_limits<double>::infinity();
    return out;
  }
  State f = rhs(out.state, p, {p.u11, p.u12});
  for (double v : f) out.residual_norm = std::max(out.residual_norm, std::abs(v));
  return out;
}

EquilibriumReport stability_verdict(const Params& p, const State& state) {
  validate(p);
  EquilibriumReport rep;
  rep.state = state;
  rep.residual_norm = residual_max_abs(p, state);
  if (!(rep.residual_norm < 1e-8))
    throw DomainError("stability_verdict: state is not an equilibrium "
                      "(residual " + std::to_string(rep.residual_norm) + ")");
  rep.eigen_real_parts =
      sorted_real_parts(numerical_jacobian(state, p, {p.u11, p.u12}));
  rep.stable = rep.eigen_real_parts[5] < 0.0;
  return rep;
}

}  // namespace agesirs

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "agesirs/types.h"

namespace agesirs {

// A sampled curve on a uniform grid: samples.size() == n_steps + 1.
template <std::size_t N>
struct Series {
  Grid grid;
  std::vector<std::array<double, N>> samples;
};

using Trajectory = Series<6>;

namespace detail {
template <std::size_t N>
inline bool all_finite(const std::array<double, N>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}
}  // namespace detail

// Classical fixed-step RK4, forward in time. `field(t, y) -> dy/dt`.
template <std::size_t N, class F>
Series<N> rk4_forward(F&& field, const std::array<double, N>& y0,
                      const Grid& g) {
  validate(g);
  if (!detail::all_finite(y0)) throw DomainError("rk4_forward: y0 not finite");
  const double h = g.h();
  Series<N> out;
  out.grid = g;
  out.samples.resize(static_cast<std::size_t>(g.n_steps) + 1);
  out.samples[0] = y0;
  std::array<double, N> s2, s3, s4;
  for (std::int64_t k = 0; k < g.n_steps; ++k) {
    const double t = g.t0 + h * static_cast<double>(k);
    const auto& y = out.samples[static_cast<std::size_t>(k)];
    auto k1 = field(t, y);
    for (std::size_t j = 0; j < N; ++j) s2[j] = y[j] + 0.5 * h * k1[j];
    auto k2 = field(t + 0.5 * h, s2);
    for (std::size_t j = 0; j < N; ++j) s3[j] = y[j] + 0.5 * h * k2[j];
    auto k3 = field(t + 0.5 * h, s3);
    for (std::size_t j = 0; j < N; ++j) s4[j] = y[j] + h * k3[j];
    auto k4 = field(t + h, s4);
    auto& yn = out.samples[static_cast<std::size_t>(k) + 1];
    for (std::size_t j = 0; j < N; ++j)
      yn[j] = y[j] + (h / 6.0) * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
    if (!detail::all_finite(yn))
      throw IntegrationError("rk4_forward: non-finite state", k + 1);
  }
  return out;
}

// RK4 backward in time: starts from lamT stored at index n_steps and fills
// the grid down to index 0.
template <std::size_t N, class F>
Series<N> rk4_backward(F&& field, const std::array<double, N>& lamT,
                       const Grid& g) {
  validate(g);
  if (!detail::all_finite(lamT))
    throw DomainError("rk4_backward: lamT not finite");
  const double h = g.h();
  Series<N> out;
  out.grid = g;
  out.samples.resize(static_cast<std::size_t>(g.n_steps) + 1);
  out.samples[static_cast<std::size_t>(g.n_steps)] = lamT;
  std::array<double, N> s2, s3, s4;
  for (std::int64_t k = g.n_steps; k > 0; --k) {
    const double t = g.t0 + h * static_cast<double>(k);
    const auto& lam = out.samples[static_cast<std::size_t>(k)];
    auto k1 = field(t, lam);
    for (std::size_t j = 0; j < N; ++j) s2[j] = lam[j] - 0.5 * h * k1[j];
    auto k2 = field(t - 0.5 * h, s2);
    for (std::size_t j = 0; j < N; ++j) s3[j] = lam[j] - 0.5 * h * k2[j];
    auto k3 = field(t - 0.5 * h, s3);
    for (std::size_t j = 0; j < N; ++j) s4[j] = lam[j] - h * k3[j];
    auto k4 = field(t - h, s4);
    auto& ln = out.samples[static_cast<std::size_t>(k) - 1];
    for (std::size_t j = 0; j < N; ++j)
      ln[j] = lam[j] - (h / 6.0) * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
    if (!detail::all_finite(ln))
      throw IntegrationError("rk4_backward: non-finite state", k - 1);
  }
  return out;
}

// Nearest-node lookup; grids are shared across state/adjoint/control series,
// so sweep-internal lookups are exact node hits.
template <std::size_t N>
const std::array<double, N>& sample_lookup(const Series<N>& traj, double t) {
  const Grid& g = traj.grid;
  const double slack = 1e-9 * (g.T - g.t0);
  if (t < g.t0 - slack || t > g.T + slack)
    throw DomainError("sample_lookup: t outside [t0, T]");
  auto k = static_cast<std::int64_t>(std::llround((t - g.t0) / g.h()));
  if (k < 0) k = 0;
  if (k > g.n_steps) k = g.n_steps;
  return traj.samples[static_cast<std::size_t>(k)];
}

}  // namespace agesirs

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "agesirs/types.h"

namespace agesirs {

// Rate constants in a form instantiable for double (reference) and for a
// 4-lane pack (AVX2). Keeping one template is what guarantees the two code
// paths perform the same operations in the same order.
template <class Real>
struct RateConstants {
  Real b1, delta1, delta2;
  Real beta1, beta2, beta3, beta4;
  Real mu, d1, d2;
  Real alpha, m;
};

inline RateConstants<double> rate_constants(const Params& p) {
  return {p.b1, p.delta1, p.delta2, p.beta1, p.beta2,
          p.beta3, p.beta4, p.mu, p.d1, p.d2, p.alpha, p.m};
}

// dy = f(y) for the six compartments under instantaneous controls (u11, u12).
template <class Real>
inline void model_rates(const Real* y, const RateConstants<Real>& c, Real u11,
                        Real u12, Real* dy) {
  const Real i2sq = y[iI2] * y[iI2];
  const Real holl = u12 * i2sq / (Real(1.0) + c.alpha * i2sq);
  const Real inf1 = c.beta1 * y[iS1] * y[iI1] + c.beta2 * y[iS1] * y[iI2];
  const Real inf2 = c.beta3 * y[iS2] * y[iI1] + c.beta4 * y[iS2] * y[iI2];
  dy[iS1] = c.b1 + c.delta1 * y[iR1] - inf1 - c.mu * y[iS1] - c.m * y[iS1];
  dy[iI1] = inf1 - c.d1 * y[iI1] - c.mu * y[iI1] - u11 * y[iI1];
  dy[iR1] = u11 * y[iI1] - c.mu * y[iR1] - c.delta1 * y[iR1] - c.m * y[iR1];
  dy[iS2] = c.m * y[iS1] + c.delta2 * y[iR2] - inf2 - c.mu * y[iS2];
  dy[iI2] = inf2 - c.d2 * y[iI2] - c.mu * y[iI2] - holl;
  dy[iR2] = c.m * y[iR1] + holl - c.mu * y[iR2] - c.delta2 * y[iR2];
}

// One classical RK4 step with constant controls, shared by the ensemble
// back-ends. `hh` = h, `hh2` = h/2, `hh6` = h/6 precomputed as doubles and
// broadcast by the caller so every lane uses identical scalars.
template <class Real>
inline void rk4_step_const(Real* y, const RateConstants<Real>& c, Real u11,
                           Real u12, Real hh, Real hh2, Real hh6) {
  Real k1[6], k2[6], k3[6], k4[6], tmp[6];
  model_rates(y, c, u11, u12, k1);
  for (int j = 0; j < 6; ++j) tmp[j] = y[j] + hh2 * k1[j];
  model_rates(tmp, c, u11, u12, k2);
  for (int j = 0; j < 6; ++j) tmp[j] = y[j] + hh2 * k2[j];
  model_rates(tmp, c, u11, u12, k3);
  for (int j = 0; j < 6; ++j) tmp[j] = y[j] + hh * k3[j];
  model_rates(tmp, c, u11, u12, k4);
  for (int j = 0; j < 6; ++j)
    y[j] = y[j] + hh6 * (k1[j] + Real(2.0) * (k2[j] + k3[j]) + k4[j]);
}

}  // namespace agesirs

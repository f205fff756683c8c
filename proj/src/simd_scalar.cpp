// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "agesirs/kernel.h"
#include "simd_internal.h"

namespace agesirs::detail {

bool ensemble_member_scalar(const EnsembleMember& m, const State& y0,
                            const Grid& g, double* itot) {
  const auto c = rate_constants(m.params);
  const double h = g.h();
  const double h2 = 0.5 * h;
  const double h6 = h / 6.0;
  double y[6];
  for (int j = 0; j < 6; ++j) y[j] = y0[j];
  itot[0] = y[iI1] + y[iI2];
  bool ok = std::isfinite(itot[0]);
  for (std::int64_t k = 0; k < g.n_steps; ++k) {
    rk4_step_const<double>(y, c, m.u11, m.u12, h, h2, h6);
    const double v = y[iI1] + y[iI2];
    itot[k + 1] = v;
    ok = ok && std::isfinite(v);
  }
  return ok;
}

}  // namespace agesirs::detail

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "agesirs/simd.h"
#include "agesirs/types.h"

namespace agesirs::detail {

// Integrates one member on the grid; writes I1+I2 at every node (n_steps+1
// values) into itot. Returns false if any written value is non-finite.
bool ensemble_member_scalar(const EnsembleMember& m, const State& y0,
                            const Grid& g, double* itot);

// Four members in lock-step lanes; itot[l] receives member l's curve.
// Only called when the CPU reports AVX2.
bool ensemble_block4_avx2(const EnsembleMember* m4, const State& y0,
                          const Grid& g, double* const itot[4],
                          bool lane_ok[4]);

}  // namespace agesirs::detail

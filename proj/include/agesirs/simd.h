// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agesirs/types.h"

namespace agesirs {

// One ensemble member: a full parameter set plus the constant controls to
// apply over the whole horizon.
struct EnsembleMember {
  Params params;
  double u11 = 0.0;
  double u12 = 0.0;
};

struct EnsembleOptions {
  std::int64_t curve_stride = 1;  // node stride for stored I-total curves
  bool force_scalar = false;      // bypass the vector back-end (tests)
};

// Per-time ensemble statistics of I_total(t) = I1(t) + I2(t), plus strided
// copies of the individual curves for serialization.
struct EnsembleResult {
  std::vector<double> mean;  // full grid, n_steps+1 entries
  std::vector<double> mse;   // population mean squared deviation, full grid
  std::vector<std::int64_t> curve_nodes;        // node index per stored row
  std::vector<std::vector<double>> curves;      // [member][stored row]
  std::vector<std::uint8_t> finite;             // per member
  std::string backend;                          // "avx2" or "scalar"
};

// Integrates every member with fixed-step RK4 on the shared grid and reduces
// the I-total curves member-by-member (deterministic order). Lanes of the
// vector back-end hold members; scalar and vector paths instantiate the same
// kernel template and produce bit-identical trajectories.
EnsembleResult integrate_ensemble(const std::vector<EnsembleMember>& members,
                                  const State& y0, const Grid& grid,
                                  const EnsembleOptions& opt = {});

bool avx2_available();
const char* preferred_backend();  // "avx2" when the CPU supports it

}  // namespace agesirs

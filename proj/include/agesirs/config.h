// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agesirs/optimal_control.h"
#include "agesirs/types.h"

namespace agesirs {

// Grids and value lists for the batch studies. The `steps_*` profiles exist
// because the endemic-scale transmission rates produce fast transients that
// need a finer step than the everyday default grid.
struct StudySettings {
  double r0_lo = 1.1, r0_hi = 7.0, r0_step = 0.1;  // sweep-r0 default grid
  std::vector<double> r0_values;  // explicit grid; overrides lo/hi/step
  std::vector<double> alpha_values{0.0, 0.4, 1.0, 2.0};
  std::vector<double> alpha_r0_values{2.0, 3.0, 6.0};
  std::int64_t steps_replication = 200000;  // strategy-comparison horizon
  std::int64_t steps_sensitivity = 100000;  // per ensemble member
  std::int64_t steps_sweeps = 20000;        // scaled-transmission sweeps
  std::int64_t steps_stability = 500000;    // T=500 convergence run
  bool operator==(const StudySettings&) const = default;
};

struct RunConfig {
  std::string preset = "table2";
  Params params;                           // table2 values by default
  State y0{100.0, 100.0, 10.0, 10.0, 5.0, 5.0};
  Grid grid;                               // (0, 100) with 10000 steps
  CostWeights weights;
  ControlBounds bounds;
  SweepSettings sweep_settings;
  double sensitivity_threshold = 0.05;
  StudySettings study;
  std::string output_dir = "out";
  std::uint64_t seed = 42;
  bool operator==(const RunConfig&) const = default;
};

// Flat `key = value` document, `#` comments, dotted key paths. Unknown or
// duplicate keys are rejected with the offending key path; a `preset` key is
// applied before the explicit keys regardless of its position in the file.
RunConfig parse_config(const std::string& text);

// Canonical serialization; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

// Throws DomainError (with key path) on any invariant violation.
void validate(const RunConfig& cfg);

// "table2" | "table3" | "table4" -> parameter preset applied onto cfg.params.
void apply_preset(RunConfig& cfg, const std::string& name);

// Expands study.r0_values or the lo/hi/step grid.
std::vector<double> study_r0_grid(const StudySettings& s);

}  // namespace agesirs

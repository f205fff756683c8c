// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "agesirs/types.h"

namespace agesirs {

// One-parameter ensemble sweep: values lo, lo+step, ..., <= hi.
struct SweepSpec {
  std::string param_name;
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;
  Params base;
  State y0{100.0, 150.0, 5.0, 70.0, 10.0, 30.0};
  Grid grid;
  double threshold = 0.05;        // sensitive iff score > threshold
  std::int64_t curve_stride = 0;  // 0: auto (about 1000 stored rows)
};

struct SweepResult {
  std::vector<double> values;                // trial values actually run
  std::vector<std::int64_t> curve_nodes;     // stored-row node indices
  std::vector<std::vector<double>> curves;   // I_total per value, strided
  std::vector<double> mean_curve, mse_curve; // full grid
  double score = 0.0;  // max_t mse(t) / (1 + mean(t)^2)
  bool sensitive = false;
  std::vector<std::string> warnings;  // skipped values etc.
  std::string backend;
};

// Integrates the uncontrolled system (constant controls at the parameter
// values; the trial value itself when sweeping u11 or u12) for every value.
SweepResult run_sweep(const SweepSpec& spec);

// Pointwise arithmetic mean and population mean squared deviation.
std::pair<std::vector<double>, std::vector<double>> ensemble_stats(
    const std::vector<std::vector<double>>& curves);

struct Table5Row {
  std::string param;
  double lo, hi, step;
  bool published_sensitive;  // verdict from the reference table
};

// The full published sweep protocol: 29 (parameter, interval) rows.
const std::vector<Table5Row>& table5_rows();

struct ClassificationRow {
  std::string param;
  double lo, hi, step;
  double score;
  bool sensitive;
  bool published_verdict;
  bool agrees;
};

// Runs every row of the protocol; `on_row` (optional) receives each sweep as
// it completes, so callers can serialize without holding all curves.
std::vector<ClassificationRow> full_table5_run(
    const Params& base, const State& y0, const Grid& grid,
    double threshold = 0.05,
    const std::function<void(const Table5Row&, const SweepResult&)>& on_row =
        nullptr);

}  // namespace agesirs

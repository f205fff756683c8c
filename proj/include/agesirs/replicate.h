// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "agesirs/config.h"

namespace agesirs {

// One comparison row of the replication report.
struct ReportRow {
  std::string id;        // criterion tag, e.g. "C01.r0-low"
  std::string claim;     // what is being checked
  std::string expected;  // published/expected value, as text
  std::string actual;
  bool pass = false;
};

struct ReplicationReport {
  std::vector<ReportRow> rows;
  bool all_pass = true;
};

// Runs the full study battery (equilibria, reproduction numbers, stability
// run, strategy comparison, r0/alpha sweeps, sensitivity classification),
// writes every artifact under cfg.output_dir, and returns the comparison
// report against the published reference values. Deterministic for a fixed
// config and seed.
ReplicationReport replicate_paper(const RunConfig& cfg);

}  // namespace agesirs

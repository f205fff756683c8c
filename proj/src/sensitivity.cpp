// SPDX-License-Identifier: Apache-2.0
#include "agesirs/sensitivity.h"

#include <cmath>

#include "agesirs/csv.h"
#include "agesirs/model.h"
#include "agesirs/simd.h"

namespace agesirs {

namespace {

double Params::*param_field(const std::string& name) {
  if (name == "b1") return &Params::b1;
  if (name == "delta1") return &Params::delta1;
  if (name == "delta2") return &Params::delta2;
  if (name == "beta1") return &Params::beta1;
  if (name == "beta2") return &Params::beta2;
  if (name == "beta3") return &Params::beta3;
  if (name == "beta4") return &Params::beta4;
  if (name == "mu") return &Params::mu;
  if (name == "d1") return &Params::d1;
  if (name == "d2") return &Params::d2;
  if (name == "u11") return &Params::u11;
  if (name == "u12") return &Params::u12;
  if (name == "alpha") return &Params::alpha;
  if (name == "m") return &Params::m;
  throw DomainError("run_sweep: unknown parameter '" + name + "'");
}

std::vector<double> grid_values(double lo, double hi, double step) {
  std::vector<double> vals;
  const double slack = 1e-9 * step;
  for (std::int64_t k = 0;; ++k) {
    const double v = lo + static_cast<double>(k) * step;
    if (v > hi + slack) break;
    vals.push_back(v);
  }
  return vals;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec.base);
  validate(spec.grid);
  validate_state(spec.y0);
  if (!(spec.step > 0.0)) throw DomainError("run_sweep: step must be > 0");
  if (spec.lo > spec.hi) throw DomainError("run_sweep: lo > hi");
  auto field = param_field(spec.param_name);

  SweepResult out;
  std::vector<EnsembleMember> members;
  for (double v : grid_values(spec.lo, spec.hi, spec.step)) {
    if (v < 0.0)
      throw DomainError("run_sweep: negative trial value for " +
                        spec.param_name);
    Params trial = spec.base;
    trial.*field = v;
    // The uncontrolled system runs with constant controls at the parameter
    // values, so a swept treatment rate feeds the integrator directly.
    EnsembleMember m{trial, trial.u11, trial.u12};
    try {
      validate(trial);
    } catch (const DomainError& e) {
      out.warnings.push_back("skipped " + spec.param_name + "=" + fmt(v) +
                             ": " + e.what());
      continue;
    }
    out.values.push_back(v);
    members.push_back(m);
  }
  if (members.empty())
    throw DomainError("run_sweep: no valid trial values for " +
                      spec.param_name);

  EnsembleOptions opt;
  opt.curve_stride = spec.curve_stride > 0
                         ? spec.curve_stride
                         : std::max<std::int64_t>(1, spec.grid.n_steps / 1000);
  EnsembleResult ens = integrate_ensemble(members, spec.y0, spec.grid, opt);
  for (std::size_t i = 0; i < members.size(); ++i)
    if (!ens.finite[i])
      throw IntegrationError("run_sweep: non-finite trajectory for " +
                                 spec.param_name + "=" + fmt(out.values[i]),
                             static_cast<std::int64_t>(i));

  out.curve_nodes = std::move(ens.curve_nodes);
  out.curves = std::move(ens.curves);
  out.mean_curve = std::move(ens.mean);
  out.mse_curve = std::move(ens.mse);
  out.backend = ens.backend;
  out.score = 0.0;
  for (std::size_t k = 0; k < out.mean_curve.size(); ++k) {
    const double mean = out.mean_curve[k];
    const double s = out.mse_curve[k] / (1.0 + mean * mean);
    if (s > out.score) out.score = s;
  }
  out.sensitive = out.values.size() > 1 && out.score > spec.threshold;
  return out;
}

std::pair<std::vector<double>, std::vector<double>> ensemble_stats(
    const std::vector<std::vector<double>>& curves) {
  if (curves.empty()) throw DomainError("ensemble_stats: no curves");
  const std::size_t n = curves[0].size();
  for (const auto& c : curves)
    if (c.size() != n) throw DomainError("ensemble_stats: ragged curves");
  const double inv = 1.0 / static_cast<double>(curves.size());
  std::vector<double> mean(n, 0.0), mse(n, 0.0);
  for (const auto& c : curves)
    for (std::size_t k = 0; k < n; ++k) mean[k] += c[k];
  for (std::size_t k = 0; k < n; ++k) mean[k] *= inv;
  for (const auto& c : curves)
    for (std::size_t k = 0; k < n; ++k) {
      const double d = c[k] - mean[k];
      mse[k] += d * d;
    }
  for (std::size_t k = 0; k < n; ++k) mse[k] *= inv;
  return {std::move(mean), std::move(mse)};
}

const std::vector<Table5Row>& table5_rows() {
  static const std::vector<Table5Row> rows = {
      {"u11", 0.0, 0.5, 0.01, true},
      {"u11", 1.5, 2.0, 0.01, false},
      {"b1", 6.5, 7.192, 0.01, true},
      {"b1", 7.192, 8.0, 0.01, true},
      {"b1", 0.1, 0.5, 0.01, false},
      {"m", 0.0, 0.00182, 0.0001, false},
      {"m", 0.00182, 1.0, 0.01, false},
      {"u12", 0.0, 0.5, 0.05, false},
      {"u12", 0.5, 2.0, 0.05, false},
      {"beta1", 0.0, 1.33, 0.01, true},
      {"beta1", 1.33, 2.0, 0.01, false},
      {"beta2", 0.0, 2.0, 0.01, false},
      {"beta2", 2.0, 3.0, 0.01, false},
      {"beta3", 0.0, 2.5, 0.01, false},
      {"beta3", 2.5, 5.0, 0.01, false},
      {"beta4", 0.0, 0.5, 0.01, false},
      {"beta4", 0.5, 1.0, 0.01, false},
      {"alpha", 0.0, 0.5, 0.01, false},
      {"alpha", 0.5, 2.0, 0.01, false},
      {"d1", 0.0, 0.000073, 0.00001, false},
      {"d1", 0.000073, 1.0, 0.01, true},
      {"d2", 0.0, 0.0000913, 0.00001, false},
      {"d2", 0.0000913, 2.0, 0.01, false},
      {"mu", 0.0, 0.5, 0.01, true},
      {"mu", 0.5, 2.0, 0.01, false},
      {"delta1", 0.0, 0.0714, 0.001, false},
      {"delta1", 0.0714, 1.0, 0.001, false},
      {"delta2", 0.0, 0.0714, 0.001, false},
      {"delta2", 0.0714, 1.0, 0.001, false},
  };
  return rows;
}

std::vector<ClassificationRow> full_table5_run(
    const Params& base, const State& y0, const Grid& grid, double threshold,
    const std::function<void(const Table5Row&, const SweepResult&)>& on_row) {
  std::vector<ClassificationRow> table;
  for (const Table5Row& row : table5_rows()) {
    SweepSpec spec;
    spec.param_name = row.param;
    spec.lo = row.lo;
    spec.hi = row.hi;
    spec.step = row.step;
    spec.base = base;
    spec.y0 = y0;
    spec.grid = grid;
    spec.threshold = threshold;
    SweepResult res = run_sweep(spec);
    ClassificationRow out;
    out.param = row.param;
    out.lo = row.lo;
    out.hi = row.hi;
    out.step = row.step;
    out.score = res.score;
    out.sensitive = res.sensitive;
    out.published_verdict = row.published_sensitive;
    out.agrees = res.sensitive == row.published_sensitive;
    table.push_back(out);
    if (on_row) on_row(row, res);
  }
  return table;
}

}  // namespace agesirs

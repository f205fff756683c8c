// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: simulation, equilibrium/reproduction-number
// reports, optimal control, sensitivity classification, batch sweeps, and
// the full replication battery. Every run writes a machine-readable
// summary.json plus command-specific CSV/JSON artifacts under --out.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "agesirs/config.h"
#include "agesirs/csv.h"
#include "agesirs/experiments.h"
#include "agesirs/model.h"
#include "agesirs/optimal_control.h"
#include "agesirs/replicate.h"
#include "agesirs/reproduction.h"
#include "agesirs/sensitivity.h"
#include "agesirs/simd.h"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace agesirs;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Config echo for the summary: one JSON string per canonical key.
ordered_json config_echo(const RunConfig& cfg) {
  ordered_json j;
  std::istringstream in(serialize_config(cfg));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

void write_summary(const RunConfig& cfg, const std::string& command,
                   const ordered_json& results, const ordered_json& checks) {
  ordered_json j;
  j["command"] = command;
  j["backend"] = preferred_backend();
  j["config"] = config_echo(cfg);
  j["results"] = results;
  j["checks"] = checks;
  write_text_file(fs::path(cfg.output_dir) / "summary.json", j.dump(2) + "\n");
}

std::vector<std::int64_t> report_nodes(std::int64_t n_steps,
                                       std::int64_t max_rows) {
  std::int64_t stride = std::max<std::int64_t>(1, n_steps / (max_rows - 1));
  std::vector<std::int64_t> nodes;
  for (std::int64_t k = 0; k < n_steps; k += stride) nodes.push_back(k);
  nodes.push_back(n_steps);
  return nodes;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "none") return Strategy::none;
  if (s == "u11") return Strategy::u11_only;
  if (s == "u12") return Strategy::u12_only;
  if (s == "both") return Strategy::both;
  throw DomainError("unknown strategy: " + s);
}

void write_points_csv(const fs::path& file,
                      const std::vector<BurdenPoint>& pts) {
  CsvWriter w(file,
              {"study", "strategy", "r0_target", "alpha", "avg_I1", "avg_I2",
               "avg_R1", "avg_R2", "burden", "burden_I1", "burden_I2", "J",
               "iters", "converged"});
  for (const BurdenPoint& c : pts)
    w.row({c.study, strategy_name(c.strategy), fmt(c.r0_target), fmt(c.alpha),
           fmt(c.avg_I1), fmt(c.avg_I2), fmt(c.avg_R1), fmt(c.avg_R2),
           fmt(c.burden), fmt(c.burden_I1), fmt(c.burden_I2), fmt(c.J),
           fmt(static_cast<std::int64_t>(c.iters)),
           c.converged ? "true" : "false"});
  w.close();
}

int cmd_simulate(const RunConfig& cfg) {
  const std::size_t n1 = static_cast<std::size_t>(cfg.grid.n_steps) + 1;
  const std::vector<double> c11(n1, cfg.params.u11), c12(n1, cfg.params.u12);
  Trajectory tr = integrate_states(cfg.params, cfg.y0, cfg.grid, c11, c12);
  FeasibilityReport fr = check_feasible(tr, cfg.params);

  CsvWriter w(fs::path(cfg.output_dir) / "trajectory.csv",
              {"t", "S1", "I1", "R1", "S2", "I2", "R2"});
  for (std::int64_t k : report_nodes(cfg.grid.n_steps, 2001)) {
    std::vector<std::string> cells{
        fmt(cfg.grid.t0 + static_cast<double>(k) * cfg.grid.h())};
    for (int j = 0; j < 6; ++j) cells.push_back(fmt(tr.samples[k][j]));
    w.row(cells);
  }
  w.close();

  ordered_json results;
  results["final_state"] = tr.samples.back();
  results["cumulative_burden"] = cumulative_burden(tr);
  results["max_total_population"] = fr.max_total;
  ordered_json checks;
  checks["feasible"] = fr.feasible;
  write_summary(cfg, "simulate", results, checks);
  std::cout << "simulate: burden = " << fmt(cumulative_burden(tr))
            << ", feasible = " << (fr.feasible ? "true" : "false") << "\n";
  return 0;
}

int cmd_equilibria(const RunConfig& cfg) {
  const State e0 = dfe(cfg.params);
  EquilibriumReport dfe_rep = stability_verdict(cfg.params, e0);
  auto endemic = endemic_equilibrium(
      cfg.params, default_starts(cfg.params, 20, cfg.seed));
  ClosedFormE1 cf = closed_form_e1(cfg.params);

  ordered_json j;
  j["dfe"] = {{"state", e0},
              {"residual", dfe_rep.residual_norm},
              {"eigen_real_parts", dfe_rep.eigen_real_parts},
              {"stable", dfe_rep.stable}};
  if (endemic)
    j["endemic"] = {{"found", true},
                    {"state", endemic->state},
                    {"residual", endemic->residual_norm},
                    {"eigen_real_parts", endemic->eigen_real_parts},
                    {"stable", endemic->stable}};
  else
    j["endemic"] = {{"found", false}};
  j["closed_form_endemic"] = {{"state", cf.state},
                              {"field_residual", cf.residual_norm}};
  write_text_file(fs::path(cfg.output_dir) / "equilibria.json",
                  j.dump(2) + "\n");

  ordered_json checks;
  checks["dfe_stable"] = dfe_rep.stable;
  checks["endemic_found"] = endemic.has_value();
  if (endemic) checks["endemic_stable"] = endemic->stable;
  write_summary(cfg, "equilibria", j, checks);
  std::cout << "equilibria: dfe " << (dfe_rep.stable ? "stable" : "unstable")
            << ", endemic " << (endemic ? "found" : "absent") << "\n";
  return 0;
}

int cmd_r0(const RunConfig& cfg) {
  ordered_json results, checks;
  for (R0Variant v : {R0Variant::with_control, R0Variant::no_control}) {
    R0Breakdown b = r0(cfg.params, v);
    const char* key =
        v == R0Variant::with_control ? "with_control" : "no_control";
    results[key] = {{"p", b.p},
                    {"q", b.q},
                    {"M", b.M},
                    {"r0", b.r0},
                    {"r0_matrix", b.r0_matrix}};
    checks[std::string("formula_matches_matrix_") + key] =
        std::abs(b.r0 - b.r0_matrix) <= 1e-10 * std::max(1.0, b.r0);
    std::cout << "r0 (" << key << ") = " << fmt(b.r0) << "\n";
  }
  write_summary(cfg, "r0", results, checks);
  return 0;
}

int cmd_optcontrol(const RunConfig& cfg, Strategy strat) {
  FbsResult r = forward_backward_sweep(cfg.params, cfg.y0, cfg.grid,
                                       cfg.weights, cfg.bounds, strat,
                                       cfg.sweep_settings);
  StrategyOutcome o = summarize_run(strat, r);

  std::vector<std::string> header{"t",    "S1",   "I1",   "R1",   "S2",
                                  "I2",   "R2",   "lam1", "lam2", "lam3",
                                  "lam4", "lam5", "lam6", "u11",  "u12"};
  CsvWriter w(fs::path(cfg.output_dir) /
                  (std::string("trajectory_") + strategy_name(strat) + ".csv"),
              header);
  for (std::int64_t k : report_nodes(cfg.grid.n_steps, 2001)) {
    std::vector<std::string> cells{
        fmt(cfg.grid.t0 + static_cast<double>(k) * cfg.grid.h())};
    for (int j = 0; j < 6; ++j) cells.push_back(fmt(r.states.samples[k][j]));
    for (int j = 0; j < 6; ++j) cells.push_back(fmt(r.adjoints.samples[k][j]));
    cells.push_back(fmt(r.controls.u11[k]));
    cells.push_back(fmt(r.controls.u12[k]));
    w.row(cells);
  }
  w.close();

  ordered_json results;
  results["strategy"] = strategy_name(strat);
  results["J"] = r.cost;
  results["iterations"] = r.iters;
  results["avg_I1"] = o.avg_I1;
  results["avg_I2"] = o.avg_I2;
  results["avg_R1"] = o.avg_R1;
  results["avg_R2"] = o.avg_R2;
  results["burden"] = o.burden;
  ordered_json checks;
  checks["converged"] = r.converged;
  write_summary(cfg, "optcontrol", results, checks);
  std::cout << "optcontrol (" << strategy_name(strat) << "): J = "
            << fmt(r.cost) << ", iterations = " << r.iters << ", converged = "
            << (r.converged ? "true" : "false") << "\n";
  if (!r.converged) {
    std::cerr << "error: forward-backward sweep did not converge within "
              << cfg.sweep_settings.max_iters << " iterations\n";
    return 3;
  }
  return 0;
}

int cmd_sensitivity(const RunConfig& cfg) {
  const Grid grid{cfg.grid.t0, cfg.grid.T, cfg.study.steps_sensitivity};
  const fs::path sdir = fs::path(cfg.output_dir) / "sensitivity";
  const State y0 = SweepSpec{}.y0;  // the classification protocol's state

  auto on_row = [&](const Table5Row& row, const SweepResult& res) {
    std::vector<std::string> header{"t"};
    for (double v : res.values) header.push_back(row.param + "=" + fmt(v));
    header.push_back("mean");
    header.push_back("mse");
    CsvWriter w(sdir / ("sweep_" + row.param + "_" + fmt(row.lo) + "-" +
                        fmt(row.hi) + ".csv"),
                header);
    for (std::size_t r = 0; r < res.curve_nodes.size(); ++r) {
      const std::int64_t k = res.curve_nodes[r];
      std::vector<std::string> cells{
          fmt(grid.t0 + static_cast<double>(k) * grid.h())};
      for (const auto& curve : res.curves) cells.push_back(fmt(curve[r]));
      cells.push_back(fmt(res.mean_curve[k]));
      cells.push_back(fmt(res.mse_curve[k]));
      w.row(cells);
    }
    w.close();
  };

  std::vector<ClassificationRow> cls = full_table5_run(
      cfg.params, y0, grid, cfg.sensitivity_threshold, on_row);

  CsvWriter w(fs::path(cfg.output_dir) / "sensitivity_classification.csv",
              {"param", "lo", "hi", "step", "score", "sensitive",
               "published_verdict", "agrees"});
  int agree = 0;
  ordered_json rows = ordered_json::array();
  for (const ClassificationRow& c : cls) {
    w.row({c.param, fmt(c.lo), fmt(c.hi), fmt(c.step), fmt(c.score),
           c.sensitive ? "true" : "false",
           c.published_verdict ? "true" : "false",
           c.agrees ? "true" : "false"});
    agree += c.agrees ? 1 : 0;
    rows.push_back({{"param", c.param},
                    {"lo", c.lo},
                    {"hi", c.hi},
                    {"score", c.score},
                    {"sensitive", c.sensitive},
                    {"published_verdict", c.published_verdict},
                    {"agrees", c.agrees}});
  }
  w.close();

  ordered_json results;
  results["rows"] = rows;
  results["agreement"] =
      std::to_string(agree) + "/" + std::to_string(cls.size());
  ordered_json checks;
  checks["all_rows_ran"] = cls.size() == table5_rows().size();
  write_summary(cfg, "sensitivity", results, checks);
  std::cout << "sensitivity: " << agree << "/" << cls.size()
            << " rows agree with the published verdicts\n";
  return 0;
}

int cmd_sweep_r0(const RunConfig& cfg) {
  const Grid grid{cfg.grid.t0, cfg.grid.T, cfg.study.steps_sweeps};
  const std::vector<double> values = study_r0_grid(cfg.study);
  const std::vector<Strategy> all4{Strategy::none, Strategy::u11_only,
                                   Strategy::u12_only, Strategy::both};
  std::vector<BurdenPoint> pts =
      r0_sweep(cfg.params, values, all4, cfg.y0, grid, cfg.weights,
               cfg.bounds, cfg.sweep_settings);
  write_points_csv(fs::path(cfg.output_dir) / "r0_sweep.csv", pts);

  for (Strategy s : all4) {
    CsvWriter w1(fs::path(cfg.output_dir) /
                     (std::string("fig_burden_I1_vs_r0_") + strategy_name(s) +
                      ".csv"),
                 {"r0", "burden_I1"});
    CsvWriter w2(fs::path(cfg.output_dir) /
                     (std::string("fig_burden_I2_vs_r0_") + strategy_name(s) +
                      ".csv"),
                 {"r0", "burden_I2"});
    for (const BurdenPoint& c : pts)
      if (c.strategy == s) {
        w1.row({fmt(c.r0_target), fmt(c.burden_I1)});
        w2.row({fmt(c.r0_target), fmt(c.burden_I2)});
      }
    w1.close();
    w2.close();
  }

  int bad = 0;
  for (const BurdenPoint& c : pts) bad += c.converged ? 0 : 1;
  ordered_json results;
  results["r0_values"] = values;
  results["cells"] = pts.size();
  ordered_json checks;
  checks["all_converged"] = bad == 0;
  write_summary(cfg, "sweep-r0", results, checks);
  std::cout << "sweep-r0: " << pts.size() << " cells, " << bad
            << " non-converged\n";
  if (bad > 0) {
    std::cerr << "error: " << bad << " sweep cells did not converge\n";
    return 3;
  }
  return 0;
}

int cmd_sweep_alpha(const RunConfig& cfg, Strategy strat) {
  const Grid grid{cfg.grid.t0, cfg.grid.T, cfg.study.steps_sweeps};
  std::vector<BurdenPoint> pts = alpha_sweep(
      cfg.params, cfg.study.alpha_values, strat, cfg.study.alpha_r0_values,
      cfg.y0, grid, cfg.weights, cfg.bounds, cfg.sweep_settings);
  write_points_csv(fs::path(cfg.output_dir) / "alpha_sweep.csv", pts);

  for (double r : cfg.study.alpha_r0_values) {
    CsvWriter w(fs::path(cfg.output_dir) /
                    ("fig_burden_vs_alpha_r0_" + fmt(r) + "_" +
                     strategy_name(strat) + ".csv"),
                {"alpha", "burden"});
    for (const BurdenPoint& c : pts)
      if (c.r0_target == r) w.row({fmt(c.alpha), fmt(c.burden)});
    w.close();
  }

  int bad = 0;
  for (const BurdenPoint& c : pts) bad += c.converged ? 0 : 1;
  ordered_json results;
  results["alpha_values"] = cfg.study.alpha_values;
  results["r0_values"] = cfg.study.alpha_r0_values;
  results["strategy"] = strategy_name(strat);
  results["cells"] = pts.size();
  ordered_json checks;
  checks["all_converged"] = bad == 0;
  write_summary(cfg, "sweep-alpha", results, checks);
  std::cout << "sweep-alpha (" << strategy_name(strat) << "): " << pts.size()
            << " cells, " << bad << " non-converged\n";
  if (bad > 0) {
    std::cerr << "error: " << bad << " sweep cells did not converge\n";
    return 3;
  }
  return 0;
}

int cmd_replicate(const RunConfig& cfg) {
  ReplicationReport rep = replicate_paper(cfg);
  int failed = 0;
  for (const ReportRow& r : rep.rows) {
    if (!r.pass) ++failed;
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << ": " << r.actual
              << " (expected " << r.expected << ")\n";
  }
  ordered_json results;
  results["n_rows"] = rep.rows.size();
  results["n_failed"] = failed;
  ordered_json failed_ids = ordered_json::array();
  for (const ReportRow& r : rep.rows)
    if (!r.pass) failed_ids.push_back(r.id);
  results["failed_ids"] = failed_ids;
  ordered_json checks;
  checks["all_rows_pass"] = rep.all_pass;
  write_summary(cfg, "replicate-paper", results, checks);
  std::cout << "replicate-paper: " << (rep.rows.size() - failed) << "/"
            << rep.rows.size() << " comparison rows pass; report under "
            << cfg.output_dir << "\n";
  // Disagreement with a published value is data, not a failure of the run;
  // the exit code reports only computational errors.
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-age-group SIRS model with saturated treatment"};
  app.require_subcommand(1);

  std::string config_path, preset, strategy = "both", out_dir;
  std::uint64_t seed = 0;
  std::int64_t steps = 0;
  double horizon = 0.0;

  CLI::Option* opt_config =
      app.add_option("--config", config_path, "key = value config file")
          ->check(CLI::ExistingFile);
  CLI::Option* opt_preset =
      app.add_option("--preset", preset, "parameter preset")
          ->check(CLI::IsMember({"table2", "table3", "table4"}));
  app.add_option("--strategy", strategy, "control strategy")
      ->check(CLI::IsMember({"none", "u11", "u12", "both"}));
  CLI::Option* opt_out = app.add_option("--out", out_dir, "output directory");
  CLI::Option* opt_seed = app.add_option("--seed", seed, "RNG seed");
  CLI::Option* opt_steps =
      app.add_option("--steps", steps, "override step count")
          ->check(CLI::PositiveNumber);
  CLI::Option* opt_T =
      app.add_option("--T", horizon, "override horizon end time")
          ->check(CLI::PositiveNumber);

  const char* names[] = {"simulate",    "equilibria",  "r0",
                         "optcontrol",  "sensitivity", "sweep-r0",
                         "sweep-alpha", "replicate-paper"};
  const char* descs[] = {
      "integrate the model under constant controls",
      "equilibria, residuals and eigenvalue verdicts",
      "reproduction numbers (closed form and next-generation matrix)",
      "forward-backward sweep for the selected strategy",
      "full sensitivity classification battery",
      "optimal-control sweep over scaled transmission",
      "optimal-control sweep over the treatment saturation constant",
      "full study battery with comparison report"};
  for (int i = 0; i < 8; ++i) app.add_subcommand(names[i], descs[i])->fallthrough();

  try {
    app.parse(argc, argv);

    RunConfig cfg;
    if (*opt_config) cfg = parse_config(read_file(config_path));
    if (*opt_preset) apply_preset(cfg, preset);
    if (*opt_out) cfg.output_dir = out_dir;
    if (*opt_seed) cfg.seed = seed;
    if (*opt_T) cfg.grid.T = horizon;
    if (*opt_steps) {
      cfg.grid.n_steps = steps;
      cfg.study.steps_replication = steps;
      cfg.study.steps_sensitivity = steps;
      cfg.study.steps_sweeps = steps;
      cfg.study.steps_stability = steps;
    }
    validate(cfg);

    if (app.got_subcommand("simulate")) return cmd_simulate(cfg);
    if (app.got_subcommand("equilibria")) return cmd_equilibria(cfg);
    if (app.got_subcommand("r0")) return cmd_r0(cfg);
    if (app.got_subcommand("optcontrol"))
      return cmd_optcontrol(cfg, parse_strategy(strategy));
    if (app.got_subcommand("sensitivity")) return cmd_sensitivity(cfg);
    if (app.got_subcommand("sweep-r0")) return cmd_sweep_r0(cfg);
    if (app.got_subcommand("sweep-alpha"))
      return cmd_sweep_alpha(cfg, parse_strategy(strategy));
    if (app.got_subcommand("replicate-paper")) return cmd_replicate(cfg);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IntegrationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// SPDX-License-Identifier: Apache-2.0
#include "agesirs/config.h"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "agesirs/csv.h"
#include "agesirs/model.h"

namespace agesirs {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r";
  auto a = s.find_first_not_of(ws);
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(ws);
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw DomainError(key + ": not a number: '" + v + "'");
  return x;
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  std::int64_t x = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw DomainError(key + ": not an integer: '" + v + "'");
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw DomainError(key + ": not a nonnegative integer: '" + v + "'");
  return x;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::string item;
  std::istringstream ss(v);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw DomainError(key + ": empty list element");
    out.push_back(parse_double(key, item));
  }
  return out;
}

std::string join_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt(v[i]);
  }
  return s;
}

}  // namespace

void apply_preset(RunConfig& cfg, const std::string& name) {
  if (name == "table2")
    cfg.params = table2();
  else if (name == "table3")
    cfg.params = table3();
  else if (name == "table4")
    cfg.params = table4();
  else
    throw DomainError("preset: unknown preset '" + name +
                      "' (expected table2|table3|table4)");
  cfg.preset = name;
}

void validate(const RunConfig& cfg) {
  validate(cfg.params);
  validate(cfg.grid);
  validate_state(cfg.y0);
  if (!(cfg.weights.A1 > 0.0)) throw DomainError("weights.A1 must be > 0");
  if (!(cfg.weights.A2 > 0.0)) throw DomainError("weights.A2 must be > 0");
  if (!(cfg.bounds.u11_max > 0.0))
    throw DomainError("bounds.u11_max must be > 0");
  if (!(cfg.bounds.u12_max > 0.0))
    throw DomainError("bounds.u12_max must be > 0");
  if (cfg.sweep_settings.max_iters < 1)
    throw DomainError("sweep.max_iters must be >= 1");
  if (!(cfg.sweep_settings.tol > 0.0)) throw DomainError("sweep.tol must be > 0");
  if (!(cfg.sweep_settings.relaxation > 0.0 &&
        cfg.sweep_settings.relaxation <= 1.0))
    throw DomainError("sweep.relaxation must be in (0, 1]");
  if (!(cfg.sensitivity_threshold > 0.0))
    throw DomainError("sensitivity.threshold must be > 0");
  if (!(cfg.study.r0_step > 0.0)) throw DomainError("study.r0_step must be > 0");
  if (!(cfg.study.r0_lo > 0.0 && cfg.study.r0_hi >= cfg.study.r0_lo))
    throw DomainError("study.r0_lo/r0_hi must satisfy 0 < lo <= hi");
  for (double v : cfg.study.r0_values)
    if (!(v > 0.0)) throw DomainError("study.r0_values entries must be > 0");
  for (double v : cfg.study.alpha_values)
    if (v < 0.0) throw DomainError("study.alpha_values entries must be >= 0");
  for (double v : cfg.study.alpha_r0_values)
    if (!(v > 0.0))
      throw DomainError("study.alpha_r0_values entries must be > 0");
  const struct {
    const char* name;
    std::int64_t v;
  } steps[] = {{"study.steps_replication", cfg.study.steps_replication},
               {"study.steps_sensitivity", cfg.study.steps_sensitivity},
               {"study.steps_sweeps", cfg.study.steps_sweeps},
               {"study.steps_stability", cfg.study.steps_stability}};
  for (auto& s : steps)
    if (s.v < 1) throw DomainError(std::string(s.name) + " must be >= 1");
  if (cfg.output_dir.empty()) throw DomainError("output_dir must be nonempty");
}

RunConfig parse_config(const std::string& text) {
  // First pass: collect key/value pairs, reject duplicates.
  std::vector<std::pair<std::string, std::string>> kv;
  std::set<std::string> seen;
  std::istringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw DomainError("config line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second)
      throw DomainError(key + ": duplicate key");
    kv.emplace_back(std::move(key), std::move(val));
  }

  RunConfig cfg;
  // Preset applies before explicit keys regardless of file order.
  for (const auto& [k, v] : kv)
    if (k == "preset") apply_preset(cfg, v);

  for (const auto& [k, v] : kv) {
    if (k == "preset") continue;
    if (k == "params.b1") cfg.params.b1 = parse_double(k, v);
    else if (k == "params.delta1") cfg.params.delta1 = parse_double(k, v);
    else if (k == "params.delta2") cfg.params.delta2 = parse_double(k, v);
    else if (k == "params.beta1") cfg.params.beta1 = parse_double(k, v);
    else if (k == "params.beta2") cfg.params.beta2 = parse_double(k, v);
    else if (k == "params.beta3") cfg.params.beta3 = parse_double(k, v);
    else if (k == "params.beta4") cfg.params.beta4 = parse_double(k, v);
    else if (k == "params.mu") cfg.params.mu = parse_double(k, v);
    else if (k == "params.d1") cfg.params.d1 = parse_double(k, v);
    else if (k == "params.d2") cfg.params.d2 = parse_double(k, v);
    else if (k == "params.u11") cfg.params.u11 = parse_double(k, v);
    else if (k == "params.u12") cfg.params.u12 = parse_double(k, v);
    else if (k == "params.alpha") cfg.params.alpha = parse_double(k, v);
    else if (k == "params.m") cfg.params.m = parse_double(k, v);
    else if (k == "y0.S1") cfg.y0[iS1] = parse_double(k, v);
    else if (k == "y0.I1") cfg.y0[iI1] = parse_double(k, v);
    else if (k == "y0.R1") cfg.y0[iR1] = parse_double(k, v);
    else if (k == "y0.S2") cfg.y0[iS2] = parse_double(k, v);
    else if (k == "y0.I2") cfg.y0[iI2] = parse_double(k, v);
    else if (k == "y0.R2") cfg.y0[iR2] = parse_double(k, v);
    else if (k == "grid.t0") cfg.grid.t0 = parse_double(k, v);
    else if (k == "grid.T") cfg.grid.T = parse_double(k, v);
    else if (k == "grid.steps") cfg.grid.n_steps = parse_int(k, v);
    else if (k == "weights.A1") cfg.weights.A1 = parse_double(k, v);
    else if (k == "weights.A2") cfg.weights.A2 = parse_double(k, v);
    else if (k == "bounds.u11_max") cfg.bounds.u11_max = parse_double(k, v);
    else if (k == "bounds.u12_max") cfg.bounds.u12_max = parse_double(k, v);
    else if (k == "sweep.max_iters")
      cfg.sweep_settings.max_iters = static_cast<int>(parse_int(k, v));
    else if (k == "sweep.tol") cfg.sweep_settings.tol = parse_double(k, v);
    else if (k == "sweep.relaxation")
      cfg.sweep_settings.relaxation = parse_double(k, v);
    else if (k == "sensitivity.threshold")
      cfg.sensitivity_threshold = parse_double(k, v);
    else if (k == "study.r0_lo") cfg.study.r0_lo = parse_double(k, v);
    else if (k == "study.r0_hi") cfg.study.r0_hi = parse_double(k, v);
    else if (k == "study.r0_step") cfg.study.r0_step = parse_double(k, v);
    else if (k == "study.r0_values") cfg.study.r0_values = parse_list(k, v);
    else if (k == "study.alpha_values")
      cfg.study.alpha_values = parse_list(k, v);
    else if (k == "study.alpha_r0_values")
      cfg.study.alpha_r0_values = parse_list(k, v);
    else if (k == "study.steps_replication")
      cfg.study.steps_replication = parse_int(k, v);
    else if (k == "study.steps_sensitivity")
      cfg.study.steps_sensitivity = parse_int(k, v);
    else if (k == "study.steps_sweeps")
      cfg.study.steps_sweeps = parse_int(k, v);
    else if (k == "study.steps_stability")
      cfg.study.steps_stability = parse_int(k, v);
    else if (k == "output_dir") cfg.output_dir = v;
    else if (k == "seed") cfg.seed = parse_uint(k, v);
    else throw DomainError(k + ": unknown key");
  }
  validate(cfg);
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::string s;
  auto put = [&](const std::string& k, const std::string& v) {
    s += k;
    s += " = ";
    s += v;
    s += "\n";
  };
  put("preset", cfg.preset);
  const Params& p = cfg.params;
  put("params.b1", fmt(p.b1));
  put("params.delta1", fmt(p.delta1));
  put("params.delta2", fmt(p.delta2));
  put("params.beta1", fmt(p.beta1));
  put("params.beta2", fmt(p.beta2));
  put("params.beta3", fmt(p.beta3));
  put("params.beta4", fmt(p.beta4));
  put("params.mu", fmt(p.mu));
  put("params.d1", fmt(p.d1));
  put("params.d2", fmt(p.d2));
  put("params.u11", fmt(p.u11));
  put("params.u12", fmt(p.u12));
  put("params.alpha", fmt(p.alpha));
  put("params.m", fmt(p.m));
  for (int j = 0; j < 6; ++j)
    put(std::string("y0.") + kStateNames[j], fmt(cfg.y0[j]));
  put("grid.t0", fmt(cfg.grid.t0));
  put("grid.T", fmt(cfg.grid.T));
  put("grid.steps", fmt(cfg.grid.n_steps));
  put("weights.A1", fmt(cfg.weights.A1));
  put("weights.A2", fmt(cfg.weights.A2));
  put("bounds.u11_max", fmt(cfg.bounds.u11_max));
  put("bounds.u12_max", fmt(cfg.bounds.u12_max));
  put("sweep.max_iters", fmt(static_cast<std::int64_t>(cfg.sweep_settings.max_iters)));
  put("sweep.tol", fmt(cfg.sweep_settings.tol));
  put("sweep.relaxation", fmt(cfg.sweep_settings.relaxation));
  put("sensitivity.threshold", fmt(cfg.sensitivity_threshold));
  put("study.r0_lo", fmt(cfg.study.r0_lo));
  put("study.r0_hi", fmt(cfg.study.r0_hi));
  put("study.r0_step", fmt(cfg.study.r0_step));
  if (!cfg.study.r0_values.empty())
    put("study.r0_values", join_list(cfg.study.r0_values));
  put("study.alpha_values", join_list(cfg.study.alpha_values));
  put("study.alpha_r0_values", join_list(cfg.study.alpha_r0_values));
  put("study.steps_replication", fmt(cfg.study.steps_replication));
  put("study.steps_sensitivity", fmt(cfg.study.steps_sensitivity));
  put("study.steps_sweeps", fmt(cfg.study.steps_sweeps));
  put("study.steps_stability", fmt(cfg.study.steps_stability));
  put("output_dir", cfg.output_dir);
  put("seed", std::to_string(cfg.seed));
  return s;
}

std::vector<double> study_r0_grid(const StudySettings& s) {
  if (!s.r0_values.empty()) return s.r0_values;
  std::vector<double> out;
  for (std::int64_t k = 0;; ++k) {
    const double v = s.r0_lo + static_cast<double>(k) * s.r0_step;
    if (v > s.r0_hi + 1e-9 * s.r0_step) break;
    out.push_back(v);
  }
  return out;
}

}  // namespace agesirs

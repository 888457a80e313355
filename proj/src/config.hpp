#pragma once

#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "director_dynamics.hpp"
#include "fields.hpp"
#include "forcing.hpp"
#include "momentum_solver.hpp"

namespace nlcflow {

/// Plain-text run configuration. File syntax:
///
///   # comment
///   preset = f1-potential        (optional, before any section: start from a preset)
///   [grid]       nx ny lx ly
///   [physics]    nu lambda gamma eta rho_low rho_high
///   [initial]    rho0 u0 v0 d1 d2          (expressions in x, y)
///   [forcing]    type = potential|decaying, phi, a1, a2, xi, amplitude
///   [stepping]   dt t_end cfl_safety max_steps
///   [tolerances] tol_lin tol_proj tol_stationary tol_max
///   [output]     record_every snapshot_every out_dir
///   [analysis]   window_fraction probe_gap_floor mms_levels
struct RunConfig {
  std::string name = "custom";

  int nx = 64, ny = 64;
  double lx = 1.0, ly = 1.0;

  double nu = 1.0, lambda = 1.0, gamma = 1.0, eta = 0.5;
  double rho_low = 1.0, rho_high = 1.0;

  std::string rho0 = "1", u0 = "0", v0 = "0", d1 = "1", d2 = "0";

  std::string forcing_type = "potential";
  std::string phi = "0", a1 = "0", a2 = "0";
  double xi = 1.0, amplitude = 1.0;

  double dt = 1e-3, t_end = 50.0, cfl_safety = 0.5;
  long max_steps = 0;  // 0: run to t_end

  double tol_lin = 1e-10, tol_proj = 1e-8, tol_stationary = 1e-9, tol_max = 1e-6;

  int record_every = 10, snapshot_every = 0;
  std::string out_dir;

  double window_fraction = 0.5;
  double probe_gap_floor = 1e-7;  // probe samples need |E(d) - E(d_inf)| above this
  int mms_levels = 4;

  /// Applies one key = value setting; `section` may be empty for dotted keys
  /// ("stepping.dt"). Throws Error(kConfigError) for unknown keys or bad values.
  void set(const std::string& section, const std::string& key, const std::string& value);
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
RunConfig preset_config(const std::string& name);
const std::vector<std::string>& preset_names();

/// Serialized form accepted by parse_config.
std::string format_config(const RunConfig& cfg);

/// Parsed and validated model built from a RunConfig.
struct Scenario {
  RunConfig cfg;
  GridSpec grid;
  ModelParams model;
  GLParams gl;
  FlowParams flow;
  ForcingSpec forcing;
  Expression rho0, u0, v0, d1, d2;

  /// Validates every sampled assumption: rho_low > 0, rho_0 within [rho_low, rho_high],
  /// |d_0| <= 1 at cells and boundary faces, xi > 0, positive constants and tolerances.
  static Scenario build(const RunConfig& cfg);
};

}  // namespace nlcflow

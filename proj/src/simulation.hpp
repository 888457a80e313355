#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "diagnostics.hpp"
#include "sim_state.hpp"
#include "snapshot.hpp"
#include "stationary_analysis.hpp"
#include "json.hpp"

namespace nlcflow {

/// Initial state: rho_0 and d_0 sampled at cell centers, v_0 sampled on faces and
/// projected once so that the discrete divergence is below tol_proj.
SimState initial_state(const Scenario& sc);

/// One coupled step of size dt from s. The sub-steps run in a fixed order:
///   1. density with v^n
///   2. director with v^n
///   3. momentum predictor with rho^{n+1}, d^{n+1}, g(t^{n+1}) and grad P^n
///   4. projection with rho^{n+1}; its correction is added to P^n
/// dt is halved while the CFL number of v^n exceeds cfl_safety; the step actually taken
/// is stored in the returned state's dt. Throws Error(kStepRejected) below dt_min.
SimState step(const SimState& s, const Scenario& sc, double dt);

/// Smallest step the CFL halving may reach.
double min_step(const RunConfig& cfg);

Snapshot state_snapshot(const SimState& s);
/// Rebuilds a state from a snapshot written by state_snapshot; boundary data comes from sc.
SimState state_from_snapshot(const Snapshot& snap, const Scenario& sc);

void save_checkpoint(const std::string& path, const SimState& s);
SimState load_checkpoint(const std::string& path, const Scenario& sc);

struct InvariantCheck {
  std::string name;
  bool passed = true;
  double worst = 0.0;  // worst value seen over the run
  double limit = 0.0;
  long worst_step = 0;
};

struct RunResult {
  std::vector<DiagRecord> records;
  std::vector<InvariantCheck> checks;
  double max_law_residual = 0.0;
  StationaryResult stationary;
  SimState final_state;
  nlohmann::json report;
  bool passed = false;  // every invariant check passed
};

struct RunOptions {
  std::optional<SimState> resume;           // continue from this state instead of t = 0
  std::function<void(const SimState&)> on_step;  // called after every accepted step
};

/// Runs to t_end (or max_steps), recording diagnostics every record_every steps plus the
/// initial and final states. With a non-empty out_dir, writes diagnostics.csv, report.json
/// and snapshot_<step>.nlcf files. Sub-step failures are rethrown with the step index.
RunResult run(const RunConfig& cfg, const RunOptions& opts = {});

/// Summary of an existing diagnostics CSV (convergence monitor and, when the records allow
/// it, the decay-rate fit of v_H1 + d_dist).
nlohmann::json report_from_records(const std::vector<DiagRecord>& records, double window_fraction = 0.5,
                                   double xi = 0.0);

}  // namespace nlcflow

#include "simulation.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "density_transport.hpp"
#include "director_dynamics.hpp"
#include "error.hpp"
#include "momentum_solver.hpp"
#include "operators.hpp"

namespace nlcflow {

namespace {

std::string bare_message(const Error& e) {
  const std::string w = e.what();
  const auto colon = w.find(": ");
  return colon == std::string::npos ? w : w.substr(colon + 2);
}

auto as_fn(const Expression& e) {
  return [&e](double x, double y) { return e(x, y); };
}

}  // namespace

double min_step(const RunConfig& cfg) { return cfg.dt / 1024.0; }

SimState initial_state(const Scenario& sc) {
  const GridSpec& g = sc.grid;
  SimState s;
  s.density = DensityState::initial(ScalarField::sample(g, as_fn(sc.rho0), BoundaryKind::kNeumannZero));
  s.director = DirectorField::sample(g, as_fn(sc.d1), as_fn(sc.d2));
  const MacVelocity v0 = MacVelocity::sample(g, as_fn(sc.u0), as_fn(sc.v0));
  s.velocity = project(s.density.rho, v0, sc.cfg.dt, sc.flow).velocity;
  s.pressure = ScalarField(g, BoundaryKind::kNeumannZero);
  return s;
}

SimState step(const SimState& s, const Scenario& sc, double dt) {
  const double dt_min = min_step(sc.cfg);
  while (cfl_number(s.velocity, dt) > sc.cfg.cfl_safety) {
    dt *= 0.5;
    if (dt < dt_min) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "CFL halving reached dt = %.3e below dt_min = %.3e", dt, dt_min);
      throw Error(ErrorCode::kStepRejected, msg);
    }
  }
  SimState n;
  n.density = advance_density(s.density, s.velocity, dt);
  DirectorStepOptions dopt;
  dopt.tol_lin = sc.cfg.tol_lin;
  n.director = advance_director(s.director, s.velocity, sc.gl, dt, dopt);
  n.t = s.t + dt;
  n.dt = dt;
  n.step = s.step + 1;
  const MacVelocity accel = eval_force(sc.forcing, sc.grid, n.t);
  const MacVelocity v_star =
      predict_velocity(n.density.rho, s.velocity, n.director, accel, sc.flow, sc.gl, dt, &s.pressure);
  Projection pr = project(n.density.rho, v_star, dt, sc.flow);
  n.velocity = std::move(pr.velocity);
  n.pressure = axpby(1.0, s.pressure, 1.0, pr.pressure);
  return n;
}

Snapshot state_snapshot(const SimState& s) {
  Snapshot snap;
  snap.grid = s.density.rho.grid;
  snap.add("rho", s.density.rho.values);
  snap.add("u", s.velocity.u);
  snap.add("v", s.velocity.v);
  snap.add("P", s.pressure.values);
  snap.add("d1", s.director.d1.values);
  snap.add("d2", s.director.d2.values);
  snap.add_values("meta", {s.t, s.dt, static_cast<double>(s.step), s.density.rho_min0,
                           s.density.rho_max0, s.density.mass0, s.density.l2_norm0});
  return snap;
}

SimState state_from_snapshot(const Snapshot& snap, const Scenario& sc) {
  if (!(snap.grid == sc.grid))
    throw Error(ErrorCode::kInvalidArgument, "snapshot grid does not match the configuration");
  SimState s = initial_state(sc);
  s.density.rho.values = snap.array("rho");
  s.velocity.u = snap.array("u");
  s.velocity.v = snap.array("v");
  s.pressure.values = snap.array("P");
  s.director.d1.values = snap.array("d1");
  s.director.d2.values = snap.array("d2");
  const auto& meta = snap.get("meta").data;
  if (meta.size() != 7) throw Error(ErrorCode::kIoError, "snapshot meta field has the wrong size");
  s.t = meta[0];
  s.dt = meta[1];
  s.step = static_cast<long>(meta[2]);
  s.density.rho_min0 = meta[3];
  s.density.rho_max0 = meta[4];
  s.density.mass0 = meta[5];
  s.density.l2_norm0 = meta[6];
  const auto check = [&](const Array2D& a, const Array2D& like, const char* name) {
    if (a.cols() != like.cols() || a.rows() != like.rows())
      throw Error(ErrorCode::kIoError, std::string("snapshot field '") + name + "' has the wrong shape");
  };
  const SimState ref = initial_state(sc);
  check(s.density.rho.values, ref.density.rho.values, "rho");
  check(s.velocity.u, ref.velocity.u, "u");
  check(s.velocity.v, ref.velocity.v, "v");
  check(s.pressure.values, ref.pressure.values, "P");
  check(s.director.d1.values, ref.director.d1.values, "d1");
  check(s.director.d2.values, ref.director.d2.values, "d2");
  return s;
}

void save_checkpoint(const std::string& path, const SimState& s) { save_snapshot(path, state_snapshot(s)); }

SimState load_checkpoint(const std::string& path, const Scenario& sc) {
  return state_from_snapshot(load_snapshot(path), sc);
}

namespace {

struct CheckSet {
  InvariantCheck mass{"mass_conservation", true, 0.0, 1e-12, 0};
  InvariantCheck rho_bounds{"density_bounds", true, -std::numeric_limits<double>::infinity(), 0.0, 0};
  InvariantCheck director{"director_max_norm", true, 0.0, 0.0, 0};
  InvariantCheck divergence{"divergence", true, 0.0, 0.0, 0};
  InvariantCheck energy{"energy_monotonicity", true, -std::numeric_limits<double>::infinity(), 0.0, 0};
  InvariantCheck finite{"bounded_diagnostics", true, 0.0, std::numeric_limits<double>::infinity(), 0};

  // Reported, not gating: excursion of rho outside its initial range, relative to rho_max0.
  double range_excursion = 0.0;

  void update(InvariantCheck& c, double value, long step, bool ok) {
    if (value > c.worst || !std::isfinite(value)) {
      c.worst = value;
      c.worst_step = step;
    }
    if (!ok && c.passed) {
      c.passed = false;
      c.worst_step = step;
    }
  }

  std::vector<InvariantCheck> list() const { return {mass, rho_bounds, director, divergence, energy, finite}; }
};

nlohmann::json check_json(const InvariantCheck& c) {
  return {{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"limit", c.limit},
          {"step", c.worst_step}};
}

nlohmann::json convergence_json(const ConvergenceSummary& cs) {
  nlohmann::json series = nlohmann::json::array();
  for (const auto& s : cs.series)
    series.push_back({{"name", s.name},
                      {"initial", s.initial},
                      {"final", s.final},
                      {"max", s.max},
                      {"ratio_to_initial", s.ratio_to_initial},
                      {"ratio_to_max", s.ratio_to_max},
                      {"trivial", s.trivial},
                      {"monotone_tail", s.monotone_tail}});
  return {{"series", series}, {"monotone_tail", cs.monotone_tail}};
}

const char* rate_verdict(const RateFit& f) {
  if (f.kappa_fit > f.kappa_pred + 0.05) return "exceeds prediction";
  if (f.kappa_fit >= f.kappa_pred - 0.05) return "meets prediction";
  return "below prediction";
}

nlohmann::json rate_json(const RateFit& f) {
  return {{"kappa_fit", f.kappa_fit},     {"kappa_pred", f.kappa_pred},
          {"theta_est", f.theta_est},     {"window_begin", f.window_begin},
          {"window_end", f.window_end},   {"samples", f.samples},
          {"verdict", rate_verdict(f)},   {"passed", f.kappa_fit >= f.kappa_pred - 0.05}};
}

std::vector<double> decay_series(const std::vector<DiagRecord>& records, std::vector<double>& times) {
  std::vector<double> values;
  times.clear();
  for (const auto& r : records) {
    times.push_back(r.t);
    values.push_back(r.v_H1 + r.d_dist);
  }
  return values;
}

}  // namespace

RunResult run(const RunConfig& cfg, const RunOptions& opts) {
  const Scenario sc = Scenario::build(cfg);
  RunResult res;

  StationaryOptions sopt;
  sopt.tol_stationary = cfg.tol_stationary;
  SimState cur = opts.resume ? *opts.resume : initial_state(sc);
  {
    const SimState s0 = initial_state(sc);
    res.stationary = solve_stationary(s0.director, cfg.eta, sopt);
  }
  const DirectorField* d_inf = &res.stationary.d_inf;

  std::ofstream csv;
  const bool write_files = !cfg.out_dir.empty();
  if (write_files) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string path = cfg.out_dir + "/diagnostics.csv";
    csv.open(path);
    if (!csv) throw Error(ErrorCode::kIoError, "cannot write " + path);
    write_csv_header(csv);
  }
  auto emit = [&](const DiagRecord& r) {
    res.records.push_back(r);
    if (write_files) write_csv_row(csv, r);
  };
  auto snapshot = [&](const SimState& s) {
    if (!write_files || cfg.snapshot_every <= 0) return;
    char name[64];
    std::snprintf(name, sizeof name, "/snapshot_%07ld.nlcf", s.step);
    save_checkpoint(cfg.out_dir + name, s);
  };

  CheckSet checks;
  checks.rho_bounds.limit = 0.0;
  checks.director.limit = 1.0 + cfg.tol_max;
  checks.divergence.limit = cfg.tol_proj;
  checks.energy.limit = 0.0;

  const double c_load = [&] {
    const double cp = poincare_constant(sc.grid);
    return cp * cp * cur.density.rho_max0 * cur.density.rho_max0 / (2.0 * cfg.nu);
  }();
  const bool potential = sc.forcing.is_potential();

  std::vector<LojasiewiczSample> probe_samples;
  auto add_probe_sample = [&](const SimState& s, const DiagRecord& r) {
    const double gap = std::abs(energy_gap(s.director, *d_inf, cfg.eta));
    if (gap > cfg.probe_gap_floor) probe_samples.push_back({gap, r.gl_res_L2});
  };

  auto state_checks = [&](const SimState& s) {
    const TransportDiagnostics td = transport_diagnostics(s.density);
    const double drift = td.mass_drift / std::abs(s.density.mass0);
    checks.update(checks.mass, drift, s.step, drift <= checks.mass.limit);
    const double below = cfg.rho_low - td.min, above = td.max - cfg.rho_high;
    const double out = std::max(below, above);
    checks.update(checks.rho_bounds, out, s.step, td.min >= cfg.rho_low && td.max <= cfg.rho_high);
    const double excursion =
        std::max(s.density.rho_min0 - td.min, td.max - s.density.rho_max0) / s.density.rho_max0;
    checks.range_excursion = std::max(checks.range_excursion, excursion);
    const double dmax = max_norm_check(s.director);
    checks.update(checks.director, dmax, s.step, dmax <= checks.director.limit);
    const double div = norm(divergence(s.velocity), NormKind::kLinf);
    checks.update(checks.divergence, div, s.step, div <= checks.divergence.limit);
  };
  auto record_checks = [&](const DiagRecord& r, long step) {
    bool finite = true;
    for (double x : {r.kinetic, r.elastic, r.potential, r.E_total, r.E_tilde, r.A_val, r.B_val, r.law_residual})
      finite = finite && std::isfinite(x);
    const double ab = std::max(r.A_val, r.B_val);
    checks.update(checks.finite, ab, step, finite && r.A_val >= 0.0 && r.B_val >= 0.0);
  };

  EnergyTerms terms = energy_terms(cur, sc.forcing, sc.model);
  {
    const DiagRecord r0 = initial_record(cur, sc.forcing, sc.model, d_inf);
    emit(r0);
    record_checks(r0, cur.step);
    add_probe_sample(cur, r0);
    state_checks(cur);
    snapshot(cur);
  }

  double dt = (opts.resume && cur.dt > 0.0) ? cur.dt : cfg.dt;
  auto finished = [&](const SimState& s, double h) {
    return s.t >= cfg.t_end - 0.5 * h || (cfg.max_steps > 0 && s.step >= cfg.max_steps);
  };
  const double eps = std::numeric_limits<double>::epsilon();
  while (!finished(cur, dt)) {
    SimState next;
    try {
      next = step(cur, sc, dt);
    } catch (const Error& e) {
      throw Error(e.code(), "step " + std::to_string(cur.step + 1) + " (t = " + std::to_string(cur.t) +
                                "): " + bare_message(e));
    }
    dt = next.dt;
    const EnergyTerms next_terms = energy_terms(next, sc.forcing, sc.model);
    const double law = energy_law_residual(terms, next_terms, sc.forcing, sc.model, sc.grid);
    res.max_law_residual = std::max(res.max_law_residual, std::abs(law));

    // 10 |R| dt allowance plus a few ulps of the energies being differenced
    double increase, allowance;
    if (potential) {
      increase = next_terms.modified() - terms.modified();
      allowance = 10.0 * std::abs(law) * next.dt +
                  8.0 * eps * (std::abs(next_terms.modified()) + std::abs(terms.modified()));
    } else {
      const double k_prev = terms.total() + c_load * tail_energy(sc.forcing, sc.grid, terms.t);
      const double k_next = next_terms.total() + c_load * tail_energy(sc.forcing, sc.grid, next_terms.t);
      increase = k_next - k_prev;
      allowance = 10.0 * std::abs(law) * next.dt + 8.0 * eps * (std::abs(k_next) + std::abs(k_prev));
    }
    checks.update(checks.energy, increase - allowance, next.step, increase <= allowance);
    state_checks(next);

    const bool last = finished(next, dt);
    if (next.step % cfg.record_every == 0 || last) {
      const DiagRecord r = compute_record(cur, next, terms, next_terms, sc.forcing, sc.model, d_inf);
      emit(r);
      record_checks(r, next.step);
      add_probe_sample(next, r);
    }
    if (cfg.snapshot_every > 0 && (next.step % cfg.snapshot_every == 0 || last)) snapshot(next);
    if (opts.on_step) opts.on_step(next);
    cur = std::move(next);
    terms = next_terms;
  }
  if (write_files) csv.flush();

  res.checks = checks.list();
  res.passed = true;
  for (const auto& c : res.checks) res.passed = res.passed && c.passed;

  nlohmann::json& rep = res.report;
  rep["preset"] = cfg.name;
  rep["grid"] = {{"nx", cfg.nx}, {"ny", cfg.ny}, {"lx", cfg.lx}, {"ly", cfg.ly}};
  rep["forcing"] = cfg.forcing_type;
  rep["steps"] = cur.step;
  rep["t_final"] = cur.t;
  rep["dt_initial"] = cfg.dt;
  rep["dt_final"] = dt;
  rep["stationary"] = {{"residual", res.stationary.residual},
                       {"energy", res.stationary.energy},
                       {"iterations", res.stationary.iterations}};
  nlohmann::json jchecks = nlohmann::json::array();
  for (const auto& c : res.checks) jchecks.push_back(check_json(c));
  rep["checks"] = jchecks;
  rep["density_range_excursion"] = checks.range_excursion;
  rep["max_law_residual"] = res.max_law_residual;
  rep["poincare_constant"] = poincare_constant(sc.grid);

  if (res.records.size() >= 10) {
    rep["convergence"] = convergence_json(convergence_monitor(res.records));
  } else {
    rep["convergence"] = {{"error", "fewer than 10 records"}};
  }

  double theta = 0.5;
  bool have_theta = false;
  try {
    const ProbeResult pr = lojasiewicz_probe(probe_samples);
    theta = pr.theta_est;
    have_theta = true;
    rep["lojasiewicz"] = {{"theta_est", pr.theta_est},
                          {"q_max", pr.q_max},
                          {"samples", probe_samples.size()},
                          {"retained", pr.retained.size()},
                          {"holds", lojasiewicz_holds(pr.retained, pr.theta_est)}};
  } catch (const Error& e) {
    rep["lojasiewicz"] = {{"error", e.what()}, {"samples", probe_samples.size()}};
  }

  if (!potential) {
    const double xi = std::get<DecayingForce>(sc.forcing.variant).xi;
    std::vector<double> times;
    const std::vector<double> values = decay_series(res.records, times);
    try {
      RateFit fit = decay_rate_fit(times, values, cfg.window_fraction, theta, xi);
      rep["rate_fit"] = rate_json(fit);
      rep["rate_fit"]["theta_from_probe"] = have_theta;
    } catch (const Error& e) {
      rep["rate_fit"] = {{"error", e.what()}};
    }
  }
  rep["notes"] = {"B_val uses backward differences of consecutive states and carries an O(dt) bias",
                  "density_range_excursion is relative to rho_max0 and is reported without gating"};
  rep["passed"] = res.passed;

  if (write_files) {
    std::ofstream rj(cfg.out_dir + "/report.json");
    if (!rj) throw Error(ErrorCode::kIoError, "cannot write " + cfg.out_dir + "/report.json");
    rj << rep.dump(2) << "\n";
  }
  res.final_state = std::move(cur);
  return res;
}

nlohmann::json report_from_records(const std::vector<DiagRecord>& records, double window_fraction,
                                   double xi) {
  nlohmann::json rep;
  rep["records"] = records.size();
  if (records.empty()) return rep;
  rep["t_begin"] = records.front().t;
  rep["t_end"] = records.back().t;
  double max_law = 0.0, max_div = 0.0, max_d = 0.0, rho_min = records.front().rho_min,
         rho_max = records.front().rho_max, mass_drift = 0.0;
  for (const auto& r : records) {
    max_law = std::max(max_law, std::abs(r.law_residual));
    max_div = std::max(max_div, r.div_v_inf);
    max_d = std::max(max_d, r.d_maxnorm);
    rho_min = std::min(rho_min, r.rho_min);
    rho_max = std::max(rho_max, r.rho_max);
    mass_drift = std::max(mass_drift, std::abs(r.mass - records.front().mass) / std::abs(records.front().mass));
  }
  rep["max_law_residual"] = max_law;
  rep["max_div_v_inf"] = max_div;
  rep["max_d_maxnorm"] = max_d;
  rep["rho_min"] = rho_min;
  rep["rho_max"] = rho_max;
  rep["max_mass_drift"] = mass_drift;
  if (records.size() >= 10) rep["convergence"] = convergence_json(convergence_monitor(records));
  std::vector<double> times;
  const std::vector<double> values = decay_series(records, times);
  try {
    rep["rate_fit"] = rate_json(decay_rate_fit(times, values, window_fraction, 0.5, xi));
  } catch (const Error& e) {
    rep["rate_fit"] = {{"error", e.what()}};
  }
  return rep;
}

}  // namespace nlcflow

#include "nlcflow/nlcflow.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "config.hpp"
#include "error.hpp"
#include "mms.hpp"
#include "simulation.hpp"
#include "snapshot.hpp"
#include "stationary_analysis.hpp"

struct nlcf_config {
  nlcflow::RunConfig cfg;
};

struct nlcf_sim {
  nlcflow::Scenario scenario;
  nlcflow::SimState prev;
  nlcflow::SimState curr;
  nlcflow::StationaryResult stationary;
  double dt = 0.0;
};

namespace {

thread_local std::string g_last_error;

nlcf_status to_status(nlcflow::ErrorCode c) {
  using nlcflow::ErrorCode;
  switch (c) {
    case ErrorCode::kOk: return NLCF_OK;
    case ErrorCode::kCflViolation: return NLCF_ERR_CFL_VIOLATION;
    case ErrorCode::kLinearSolveFailure: return NLCF_ERR_LINEAR_SOLVE_FAILURE;
    case ErrorCode::kIncompatibleRhs: return NLCF_ERR_INCOMPATIBLE_RHS;
    case ErrorCode::kNotApplicable: return NLCF_ERR_NOT_APPLICABLE;
    case ErrorCode::kInsufficientSamples: return NLCF_ERR_INSUFFICIENT_SAMPLES;
    case ErrorCode::kDegenerateFit: return NLCF_ERR_DEGENERATE_FIT;
    case ErrorCode::kMaxIterations: return NLCF_ERR_MAX_ITERATIONS;
    case ErrorCode::kStepRejected: return NLCF_ERR_STEP_REJECTED;
    case ErrorCode::kOrderRegression: return NLCF_ERR_ORDER_REGRESSION;
    case ErrorCode::kConfigError: return NLCF_ERR_CONFIG;
    case ErrorCode::kIoError: return NLCF_ERR_IO;
    case ErrorCode::kInvalidArgument: return NLCF_ERR_INVALID_ARGUMENT;
  }
  return NLCF_ERR_INTERNAL;
}

template <class F>
nlcf_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return NLCF_OK;
  } catch (const nlcflow::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NLCF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return NLCF_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw nlcflow::Error(nlcflow::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

void copy_record(const nlcflow::DiagRecord& r, nlcf_record* out) {
  *out = nlcf_record{r.t,         r.kinetic,   r.elastic,   r.potential, r.E_total,
                     r.E_tilde,   r.grad_v_L2, r.gl_res_L2, r.A_val,     r.B_val,
                     r.mass,      r.rho_min,   r.rho_max,   r.d_maxnorm, r.div_v_inf,
                     r.law_residual, r.g_L2,   r.d_dist,    r.v_H1};
}

}  // namespace

extern "C" {

const char* nlcf_version(void) { return "1.0.0"; }

const char* nlcf_status_name(nlcf_status status) {
  switch (status) {
    case NLCF_OK: return "Ok";
    case NLCF_ERR_CFL_VIOLATION: return "CflViolation";
    case NLCF_ERR_LINEAR_SOLVE_FAILURE: return "LinearSolveFailure";
    case NLCF_ERR_INCOMPATIBLE_RHS: return "IncompatibleRhs";
    case NLCF_ERR_NOT_APPLICABLE: return "NotApplicable";
    case NLCF_ERR_INSUFFICIENT_SAMPLES: return "InsufficientSamples";
    case NLCF_ERR_DEGENERATE_FIT: return "DegenerateFit";
    case NLCF_ERR_MAX_ITERATIONS: return "MaxIterations";
    case NLCF_ERR_STEP_REJECTED: return "StepRejected";
    case NLCF_ERR_ORDER_REGRESSION: return "OrderRegression";
    case NLCF_ERR_CONFIG: return "ConfigError";
    case NLCF_ERR_IO: return "IoError";
    case NLCF_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case NLCF_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* nlcf_last_error(void) { return g_last_error.c_str(); }

void nlcf_string_free(char* s) { std::free(s); }

nlcf_status nlcf_config_load(const char* path, nlcf_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new nlcf_config{nlcflow::load_config(path)};
  });
}

nlcf_status nlcf_config_parse(const char* text, nlcf_config** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new nlcf_config{nlcflow::parse_config(text)};
  });
}

nlcf_status nlcf_config_preset(const char* name, nlcf_config** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = new nlcf_config{nlcflow::preset_config(name)};
  });
}

nlcf_status nlcf_config_set(nlcf_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg, "cfg");
    require(key, "key");
    require(value, "value");
    cfg->cfg.set("", key, value);
  });
}

nlcf_status nlcf_config_format(const nlcf_config* cfg, char** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = dup_string(nlcflow::format_config(cfg->cfg));
  });
}

void nlcf_config_free(nlcf_config* cfg) { delete cfg; }

nlcf_status nlcf_sim_create(const nlcf_config* cfg, nlcf_sim** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    auto sim = std::make_unique<nlcf_sim>();
    sim->scenario = nlcflow::Scenario::build(cfg->cfg);
    sim->curr = nlcflow::initial_state(sim->scenario);
    sim->prev = sim->curr;
    nlcflow::StationaryOptions so;
    so.tol_stationary = cfg->cfg.tol_stationary;
    sim->stationary = nlcflow::solve_stationary(sim->curr.director, cfg->cfg.eta, so);
    sim->dt = cfg->cfg.dt;
    *out = sim.release();
  });
}

nlcf_status nlcf_sim_step(nlcf_sim* sim, long steps) {
  return guarded([&] {
    require(sim, "sim");
    if (steps < 0) throw nlcflow::Error(nlcflow::ErrorCode::kInvalidArgument, "negative step count");
    for (long k = 0; k < steps; ++k) {
      nlcflow::SimState next = nlcflow::step(sim->curr, sim->scenario, sim->dt);
      sim->dt = next.dt;
      sim->prev = std::move(sim->curr);
      sim->curr = std::move(next);
    }
  });
}

nlcf_status nlcf_sim_time(const nlcf_sim* sim, double* t, long* step) {
  return guarded([&] {
    require(sim, "sim");
    if (t) *t = sim->curr.t;
    if (step) *step = sim->curr.step;
  });
}

nlcf_status nlcf_sim_record(const nlcf_sim* sim, nlcf_record* out) {
  return guarded([&] {
    require(sim, "sim");
    require(out, "out");
    const auto& sc = sim->scenario;
    const nlcflow::DirectorField* d_inf = &sim->stationary.d_inf;
    const nlcflow::DiagRecord r =
        sim->curr.t > sim->prev.t
            ? nlcflow::compute_record(sim->prev, sim->curr, sc.forcing, sc.model, d_inf)
            : nlcflow::initial_record(sim->curr, sc.forcing, sc.model, d_inf);
    copy_record(r, out);
  });
}

nlcf_status nlcf_sim_save(const nlcf_sim* sim, const char* path) {
  return guarded([&] {
    require(sim, "sim");
    require(path, "path");
    nlcflow::save_checkpoint(path, sim->curr);
  });
}

nlcf_status nlcf_sim_load(nlcf_sim* sim, const char* path) {
  return guarded([&] {
    require(sim, "sim");
    require(path, "path");
    sim->curr = nlcflow::load_checkpoint(path, sim->scenario);
    sim->prev = sim->curr;
    if (sim->curr.dt > 0.0) sim->dt = sim->curr.dt;
  });
}

void nlcf_sim_free(nlcf_sim* sim) { delete sim; }

nlcf_status nlcf_run(const nlcf_config* cfg, char** report_json, int* checks_passed) {
  return guarded([&] {
    require(cfg, "cfg");
    const nlcflow::RunResult r = nlcflow::run(cfg->cfg);
    if (report_json) *report_json = dup_string(r.report.dump(2));
    if (checks_passed) *checks_passed = r.passed ? 1 : 0;
  });
}

nlcf_status nlcf_stationary(const nlcf_config* cfg, const char* snapshot_path, char** result_json) {
  return guarded([&] {
    require(cfg, "cfg");
    const nlcflow::Scenario sc = nlcflow::Scenario::build(cfg->cfg);
    const nlcflow::SimState s0 = nlcflow::initial_state(sc);
    nlcflow::StationaryOptions so;
    so.tol_stationary = cfg->cfg.tol_stationary;
    const nlcflow::StationaryResult st = nlcflow::solve_stationary(s0.director, cfg->cfg.eta, so);
    if (snapshot_path) {
      nlcflow::Snapshot snap;
      snap.grid = sc.grid;
      snap.add("d1", st.d_inf.d1.values);
      snap.add("d2", st.d_inf.d2.values);
      nlcflow::save_snapshot(snapshot_path, snap);
    }
    if (result_json) {
      nlohmann::json j = {{"residual", st.residual},
                          {"energy", st.energy},
                          {"iterations", st.iterations},
                          {"max_norm", nlcflow::max_norm_check(st.d_inf)},
                          {"energy_initial", st.energy_history.empty() ? st.energy : st.energy_history.front()}};
      *result_json = dup_string(j.dump(2));
    }
  });
}

nlcf_status nlcf_mms(const nlcf_config* cfg, char** table_json, int* passed) {
  return guarded([&] {
    require(cfg, "cfg");
    const nlcflow::MmsTable t = nlcflow::mms_table(cfg->cfg);
    if (table_json) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& s : t.studies)
        j.push_back({{"quantity", s.quantity},
                     {"resolutions", s.resolutions},
                     {"errors", s.errors},
                     {"orders", s.orders},
                     {"expected", s.expected},
                     {"limit", s.limit},
                     {"passed", s.passed}});
      *table_json = dup_string(j.dump(2));
    }
    if (passed) *passed = t.passed ? 1 : 0;
    if (!t.passed) nlcflow::mms_verify(cfg->cfg);
  });
}

nlcf_status nlcf_report_csv(const char* csv_path, double window_fraction, double xi, char** report_json) {
  return guarded([&] {
    require(csv_path, "csv_path");
    std::ifstream is(csv_path);
    if (!is) throw nlcflow::Error(nlcflow::ErrorCode::kIoError, std::string("cannot open ") + csv_path);
    const auto records = nlcflow::read_csv(is);
    if (report_json)
      *report_json = dup_string(nlcflow::report_from_records(records, window_fraction, xi).dump(2));
  });
}

}  // extern "C"

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "forcing.hpp"
#include "sim_state.hpp"

namespace nlcflow {

struct ModelParams {
  double nu = 1.0;
  double lambda = 1.0;
  double gamma = 1.0;
  double eta = 0.5;
};

/// One row of monitored functionals.
struct DiagRecord {
  double t = 0.0;
  double kinetic = 0.0;
  double elastic = 0.0;
  double potential = 0.0;
  double E_total = 0.0;
  double E_tilde = 0.0;
  double grad_v_L2 = 0.0;
  double gl_res_L2 = 0.0;
  double A_val = 0.0;
  double B_val = 0.0;
  double mass = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double d_maxnorm = 0.0;
  double div_v_inf = 0.0;
  double law_residual = 0.0;
  double g_L2 = 0.0;
  double d_dist = 0.0;
  double v_H1 = 0.0;
};

/// Energy-law ingredients of a single state, reused across consecutive step pairs.
struct EnergyTerms {
  double t = 0.0;
  double kinetic = 0.0;
  double elastic = 0.0;
  double potential = 0.0;
  double phi_term = 0.0;  // int rho phi (potential force only)
  double grad_v_sq = 0.0;
  double gl_res_sq = 0.0;
  double g_sq = 0.0;
  double rho_bar = 0.0;

  double total() const { return kinetic + elastic + potential; }
  double modified() const { return total() - phi_term; }
};

EnergyTerms energy_terms(const SimState& s, const ForcingSpec& spec, const ModelParams& p);

/// Potential force: (E~_c - E~_p)/dt + nu ||grad v||^2 + lambda gamma ||Laplacian d - f||^2 with
/// the dissipation averaged over both ends. Decaying force: the positive part of the
/// analogous inequality residual with the Poincare-bounded load (C_P^2 rho_bar^2/2nu) ||g||^2.
double energy_law_residual(const EnergyTerms& prev, const EnergyTerms& curr,
                           const ForcingSpec& spec, const ModelParams& p, const GridSpec& g);
double energy_law_residual(const SimState& prev, const SimState& curr, const ForcingSpec& spec,
                           const ModelParams& p);

DiagRecord compute_record(const SimState& prev, const SimState& curr, const ForcingSpec& spec,
                          const ModelParams& p, const DirectorField* d_inf = nullptr);

/// Record of the initial state; time-derivative fields (B_val, law_residual) are zero.
DiagRecord initial_record(const SimState& s, const ForcingSpec& spec, const ModelParams& p,
                          const DirectorField* d_inf = nullptr);

/// Same as compute_record with the energy terms of both states already available.
DiagRecord compute_record(const SimState& prev, const SimState& curr, const EnergyTerms& tp,
                          const EnergyTerms& tc, const ForcingSpec& spec, const ModelParams& p,
                          const DirectorField* d_inf);

struct SeriesSummary {
  std::string name;
  double initial = 0.0;
  double final = 0.0;
  double max = 0.0;
  double ratio_to_initial = 0.0;  // 0/0 counts as 0 and sets trivial
  double ratio_to_max = 0.0;
  bool trivial = false;
  bool monotone_tail = false;
};

struct ConvergenceSummary {
  std::vector<SeriesSummary> series;  // v_H1, gl_res_L2, B_val, d_dist
  bool monotone_tail = false;         // every series non-increasing over the last quartile

  const SeriesSummary& get(const std::string& name) const;
};

/// Throws Error(kInvalidArgument) with fewer than 10 records.
ConvergenceSummary convergence_monitor(const std::vector<DiagRecord>& records);

const std::vector<std::string>& diag_field_names();
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const DiagRecord& r);
std::vector<DiagRecord> read_csv(std::istream& is);

}  // namespace nlcflow

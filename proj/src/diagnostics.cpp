#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "director_dynamics.hpp"
#include "error.hpp"
#include "momentum_solver.hpp"
#include "operators.hpp"

namespace nlcflow {

namespace {

double rho_weighted_sq(const MacVelocity& rho_f, const MacVelocity& w) {
  const GridSpec& g = w.grid;
  double acc = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) acc += rho_f.u(i, j) * w.u(i, j) * w.u(i, j);
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) acc += rho_f.v(i, j) * w.v(i, j) * w.v(i, j);
  return acc * g.cell_area();
}

double director_h1_sq(const DirectorField& d) {
  const double a = norm(d.d1, NormKind::kH1Semi), b = norm(d.d2, NormKind::kH1Semi);
  return a * a + b * b;
}

double director_distance(const DirectorField& d, const DirectorField* d_inf) {
  if (!d_inf) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  for (int k = 0; k < 2; ++k) {
    const auto& a = d.component(k).values.data();
    const auto& b = d_inf->component(k).values.data();
    for (std::size_t n = 0; n < a.size(); ++n) acc += (a[n] - b[n]) * (a[n] - b[n]);
  }
  return std::sqrt(acc * d.grid.cell_area());
}

// fields of the record that depend on a single state
DiagRecord state_fields(const SimState& s, const EnergyTerms& e, const ModelParams& p,
                        const DirectorField* d_inf) {
  DiagRecord r;
  r.t = s.t;
  r.kinetic = e.kinetic;
  r.elastic = e.elastic;
  r.potential = e.potential;
  r.E_total = e.total();
  r.E_tilde = e.modified();
  r.grad_v_L2 = std::sqrt(e.grad_v_sq);
  r.gl_res_L2 = std::sqrt(e.gl_res_sq);
  r.A_val = p.nu * e.grad_v_sq + e.gl_res_sq;
  const TransportDiagnostics td = transport_diagnostics(s.density);
  r.mass = total_mass(s.density.rho);
  r.rho_min = td.min;
  r.rho_max = td.max;
  r.d_maxnorm = max_norm_check(s.director);
  r.div_v_inf = norm(divergence(s.velocity), NormKind::kLinf);
  r.g_L2 = std::sqrt(e.g_sq);
  r.d_dist = director_distance(s.director, d_inf);
  const double l2 = norm(s.velocity, NormKind::kL2);
  r.v_H1 = std::sqrt(l2 * l2 + e.grad_v_sq);
  return r;
}

}  // namespace

EnergyTerms energy_terms(const SimState& s, const ForcingSpec& spec, const ModelParams& p) {
  EnergyTerms e;
  e.t = s.t;
  const ScalarField& rho = s.density.rho;
  e.kinetic = 0.5 * rho_weighted_sq(face_density(rho), s.velocity);
  e.elastic = 0.5 * p.lambda * director_h1_sq(s.director);
  double pot = 0.0;
  for (std::size_t n = 0; n < s.director.d1.values.size(); ++n)
    pot += gl_F_point(s.director.d1.values.data()[n], s.director.d2.values.data()[n], p.eta);
  e.potential = p.lambda * pot * rho.grid.cell_area();
  if (spec.is_potential()) e.phi_term = inner(rho, potential_field(spec, rho.grid));
  const double gv = norm(s.velocity, NormKind::kH1Semi);
  e.grad_v_sq = gv * gv;
  const double res = norm_l2(gl_residual(s.director, p.eta));
  e.gl_res_sq = res * res;
  const double gn = norm(eval_force(spec, rho.grid, s.t), NormKind::kL2);
  e.g_sq = gn * gn;
  e.rho_bar = s.density.rho_max0;
  return e;
}

double energy_law_residual(const EnergyTerms& prev, const EnergyTerms& curr,
                           const ForcingSpec& spec, const ModelParams& p, const GridSpec& g) {
  const double dt = curr.t - prev.t;
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "energy law needs increasing times");
  const double relax = p.lambda * p.gamma * 0.5 * (prev.gl_res_sq + curr.gl_res_sq);
  const double visc = 0.5 * (prev.grad_v_sq + curr.grad_v_sq);
  if (spec.is_potential())
    return (curr.modified() - prev.modified()) / dt + p.nu * visc + relax;
  const double cp = poincare_constant(g);
  const double load = cp * cp * curr.rho_bar * curr.rho_bar / (2.0 * p.nu) * 0.5 * (prev.g_sq + curr.g_sq);
  return std::max(0.0, (curr.total() - prev.total()) / dt + 0.5 * p.nu * visc + relax - load);
}

double energy_law_residual(const SimState& prev, const SimState& curr, const ForcingSpec& spec,
                           const ModelParams& p) {
  return energy_law_residual(energy_terms(prev, spec, p), energy_terms(curr, spec, p), spec, p,
                             curr.density.rho.grid);
}

DiagRecord compute_record(const SimState& prev, const SimState& curr, const EnergyTerms& tp,
                          const EnergyTerms& tc, const ForcingSpec& spec, const ModelParams& p,
                          const DirectorField* d_inf) {
  if (!(prev.t < curr.t)) throw Error(ErrorCode::kInvalidArgument, "record needs prev.t < curr.t");
  DiagRecord r = state_fields(curr, tc, p, d_inf);
  const double dt = curr.t - prev.t;
  const MacVelocity vt = axpby(1.0 / dt, curr.velocity, -1.0 / dt, prev.velocity);
  DirectorField dtd = curr.director;
  for (int k = 0; k < 2; ++k) {
    dtd.component(k) = axpby(1.0 / dt, curr.director.component(k), -1.0 / dt, prev.director.component(k));
    dtd.component(k).trace = BoundaryTrace::zero(curr.director.grid);
  }
  r.B_val = rho_weighted_sq(face_density(curr.density.rho), vt) + director_h1_sq(dtd);
  r.law_residual = energy_law_residual(tp, tc, spec, p, curr.density.rho.grid);
  return r;
}

DiagRecord compute_record(const SimState& prev, const SimState& curr, const ForcingSpec& spec,
                          const ModelParams& p, const DirectorField* d_inf) {
  return compute_record(prev, curr, energy_terms(prev, spec, p), energy_terms(curr, spec, p), spec,
                        p, d_inf);
}

DiagRecord initial_record(const SimState& s, const ForcingSpec& spec, const ModelParams& p,
                          const DirectorField* d_inf) {
  return state_fields(s, energy_terms(s, spec, p), p, d_inf);
}

const SeriesSummary& ConvergenceSummary::get(const std::string& name) const {
  for (const auto& s : series)
    if (s.name == name) return s;
  throw Error(ErrorCode::kInvalidArgument, "no series named " + name);
}

ConvergenceSummary convergence_monitor(const std::vector<DiagRecord>& records) {
  if (records.size() < 10)
    throw Error(ErrorCode::kInvalidArgument, "convergence monitor needs at least 10 records");
  struct Col {
    const char* name;
    double DiagRecord::*field;
  };
  const Col cols[] = {{"v_H1", &DiagRecord::v_H1},
                      {"gl_res_L2", &DiagRecord::gl_res_L2},
                      {"B_val", &DiagRecord::B_val},
                      {"d_dist", &DiagRecord::d_dist}};
  ConvergenceSummary out;
  out.monotone_tail = true;
  const std::size_t tail = records.size() - records.size() / 4;
  for (const auto& c : cols) {
    SeriesSummary s;
    s.name = c.name;
    // B_val is undefined at t = 0; start from the first record that has a predecessor
    const std::size_t first = (c.field == &DiagRecord::B_val && records.front().t == 0.0) ? 1 : 0;
    s.initial = records[first].*c.field;
    s.final = records.back().*c.field;
    s.max = 0.0;
    for (std::size_t k = first; k < records.size(); ++k) s.max = std::max(s.max, records[k].*c.field);
    auto ratio = [&](double den) {
      if (den == 0.0 && s.final == 0.0) {
        s.trivial = true;
        return 0.0;
      }
      return s.final / den;
    };
    s.ratio_to_initial = ratio(s.initial);
    s.ratio_to_max = ratio(s.max);
    s.monotone_tail = true;
    for (std::size_t k = std::max(tail, first + 1); k < records.size(); ++k)
      if (records[k].*c.field > records[k - 1].*c.field) s.monotone_tail = false;
    if (std::isnan(s.final)) s.monotone_tail = false;
    out.monotone_tail = out.monotone_tail && s.monotone_tail;
    out.series.push_back(s);
  }
  return out;
}

namespace {

struct Field {
  const char* name;
  double DiagRecord::*member;
};

const Field kFields[] = {
    {"t", &DiagRecord::t},
    {"kinetic", &DiagRecord::kinetic},
    {"elastic", &DiagRecord::elastic},
    {"potential", &DiagRecord::potential},
    {"E_total", &DiagRecord::E_total},
    {"E_tilde", &DiagRecord::E_tilde},
    {"grad_v_L2", &DiagRecord::grad_v_L2},
    {"gl_res_L2", &DiagRecord::gl_res_L2},
    {"A_val", &DiagRecord::A_val},
    {"B_val", &DiagRecord::B_val},
    {"mass", &DiagRecord::mass},
    {"rho_min", &DiagRecord::rho_min},
    {"rho_max", &DiagRecord::rho_max},
    {"d_maxnorm", &DiagRecord::d_maxnorm},
    {"div_v_inf", &DiagRecord::div_v_inf},
    {"law_residual", &DiagRecord::law_residual},
    {"g_L2", &DiagRecord::g_L2},
    {"d_dist", &DiagRecord::d_dist},
    {"v_H1", &DiagRecord::v_H1},
};

}  // namespace

const std::vector<std::string>& diag_field_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& f : kFields) v.emplace_back(f.name);
    return v;
  }();
  return names;
}

void write_csv_header(std::ostream& os) {
  bool first = true;
  for (const auto& f : kFields) {
    os << (first ? "" : ",") << f.name;
    first = false;
  }
  os << '\n';
}

void write_csv_row(std::ostream& os, const DiagRecord& r) {
  char buf[40];
  bool first = true;
  for (const auto& f : kFields) {
    std::snprintf(buf, sizeof buf, "%.17g", r.*f.member);
    os << (first ? "" : ",") << buf;
    first = false;
  }
  os << '\n';
}

std::vector<DiagRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::kIoError, "empty diagnostics CSV");
  std::vector<int> column_of;  // csv column -> kFields index, -1 if unknown
  {
    std::stringstream ss(line);
    std::string name;
    while (std::getline(ss, name, ',')) {
      int idx = -1;
      for (int k = 0; k < static_cast<int>(std::size(kFields)); ++k)
        if (name == kFields[k].name) idx = k;
      column_of.push_back(idx);
    }
  }
  std::vector<DiagRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    DiagRecord r;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col < column_of.size() && column_of[col] >= 0) {
        try {
          r.*kFields[column_of[col]].member = std::stod(cell);
        } catch (const std::exception&) {
          // stod rejects "nan"/"inf" spellings on some platforms
          r.*kFields[column_of[col]].member = std::strtod(cell.c_str(), nullptr);
        }
      }
      ++col;
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace nlcflow

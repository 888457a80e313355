#pragma once

#include "fields.hpp"

namespace nlcflow {

/// Density together with the reference values recorded at t = 0.
struct DensityState {
  ScalarField rho;
  double rho_min0 = 0.0;
  double rho_max0 = 0.0;
  double mass0 = 0.0;
  double l2_norm0 = 0.0;

  static DensityState initial(ScalarField rho);
};

/// Sum of rho * cell area, accumulated in extended precision.
double total_mass(const ScalarField& rho);

/// dt * (max|u|/hx + max|v|/hy).
double cfl_number(const MacVelocity& w, double dt);

/// First-order conservative upwind step rho' = rho - dt div(rho_up w).
/// Throws Error(kCflViolation) if cfl_number(w, dt) > 1.
DensityState advance_density(const DensityState& state, const MacVelocity& w, double dt);

struct TransportDiagnostics {
  double mass_drift = 0.0;
  double min = 0.0;
  double max = 0.0;
  double l2_drift = 0.0;  // ||rho(t)|| - ||rho_0||, non-positive for the monotone scheme
};

TransportDiagnostics transport_diagnostics(const DensityState& state);

}  // namespace nlcflow

#pragma once

#include "director_dynamics.hpp"
#include "fields.hpp"

namespace nlcflow {

struct FlowParams {
  double nu = 1.0;
  double lambda = 1.0;
  double tol_proj = 1e-8;  // bound on the max-norm of the projected divergence
  double tol_lin = 1e-10;  // relative residual of the viscous solves
  int max_cg = 5000;

  void validate() const;
};

/// Arithmetic average of adjacent cell densities on every face (boundary faces take
/// the adjacent cell value).
MacVelocity face_density(const ScalarField& rho);

/// Reduced elastic stress -lambda (Laplacian d - f(d)) . grad d, built at cell centers and
/// averaged onto interior faces.
MacVelocity elastic_force(const DirectorField& d, const GLParams& p);

/// First-order upwind (w . grad) w at interior faces; boundary faces are zero.
MacVelocity momentum_advection(const MacVelocity& w);

/// Implicit-viscosity predictor (rho/dt - nu Laplacian) v* = rho/dt w - rho (w . grad) w
/// + elastic_force(d) + rho g - grad P, with no-slip walls. `accel` is the body acceleration
/// g; the pressure gradient term is dropped when `pressure` is null.
MacVelocity predict_velocity(const ScalarField& rho, const MacVelocity& w, const DirectorField& d,
                             const MacVelocity& accel, const FlowParams& flow, const GLParams& gl,
                             double dt, const ScalarField* pressure = nullptr);

struct Projection {
  MacVelocity velocity;
  ScalarField pressure;
  int iterations = 0;
};

/// Variable-density pressure correction: div((1/rho) grad q) = div(v*)/dt with zero-Neumann
/// walls and zero-mean q, v' = v* - (dt/rho) grad q. Returns the correction q, which the
/// time loop adds to the pressure. `warm_start` seeds the CG iteration.
/// Throws kIncompatibleRhs if the right-hand side has a non-round-off mean and
/// kLinearSolveFailure if ||div v'||_inf <= tol_proj is not reached.
Projection project(const ScalarField& rho, const MacVelocity& v_star, double dt,
                   const FlowParams& flow, const ScalarField* warm_start = nullptr);

/// Exact Dirichlet Poincare constant of the rectangle, 1/sqrt(pi^2 (1/lx^2 + 1/ly^2)).
double poincare_constant(const GridSpec& g);

}  // namespace nlcflow

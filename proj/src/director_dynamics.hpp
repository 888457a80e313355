#pragma once

#include <array>

#include "fields.hpp"
#include "linear_solver.hpp"

namespace nlcflow {

/// Ginzburg-Landau relaxation parameters: relaxation rate, penetration length and the
/// elastic coupling shared with the momentum equation.
struct GLParams {
  double gamma = 1.0;
  double eta = 0.5;
  double lambda = 1.0;

  void validate() const;
  /// Linear stabilization 2/eta^2, the Lipschitz bound of f on the unit ball.
  double stabilization() const { return 2.0 / (eta * eta); }
};

/// Two-component vector at cell centers without boundary data.
struct CellVectorField {
  GridSpec grid;
  Array2D c1;
  Array2D c2;

  CellVectorField() = default;
  explicit CellVectorField(const GridSpec& g) : grid(g), c1(g.nx, g.ny), c2(g.nx, g.ny) {}

  Array2D& component(int k) { return k == 0 ? c1 : c2; }
  const Array2D& component(int k) const { return k == 0 ? c1 : c2; }
};

inline std::array<double, 2> gl_f_point(double d1, double d2, double eta) {
  const double s = (d1 * d1 + d2 * d2 - 1.0) / (eta * eta);
  return {s * d1, s * d2};
}

inline double gl_F_point(double d1, double d2, double eta) {
  const double m = d1 * d1 + d2 * d2 - 1.0;
  return m * m / (4.0 * eta * eta);
}

/// f(d) = (|d|^2 - 1) d / eta^2 at every cell.
CellVectorField gl_f(const DirectorField& d, double eta);

/// F(d) = (|d|^2 - 1)^2 / (4 eta^2) at every cell.
ScalarField gl_F(const DirectorField& d, double eta);

/// Laplacian(d) - f(d) with the Dirichlet ghost fill.
CellVectorField gl_residual(const DirectorField& d, double eta);

/// L2 norm of a cell vector field (midpoint quadrature).
double norm_l2(const CellVectorField& v);

/// Transport term w . grad d with cell-averaged velocity and centered differences.
CellVectorField director_advection(const DirectorField& d, const MacVelocity& w);

/// shift * I - scale * Laplacian on cells with homogeneous Dirichlet ghosts. The trace
/// contribution of the Laplacian is returned by dirichlet_boundary_term().
FivePointMatrix dirichlet_cell_matrix(const GridSpec& g, double shift, double scale);
std::vector<double> dirichlet_boundary_term(const ScalarField& s);

struct DirectorStepOptions {
  double tol_lin = 1e-10;     // relative residual of each component solve
  double abs_inf_tol = 0.0;   // alternative max-norm residual bound (if > 0)
  int max_iter = 5000;
};

/// One step of d_t + w . grad d = gamma (Laplacian d - f(d)): implicit diffusion, explicit
/// transport and explicit f with linear stabilization S d. Throws kCflViolation when the
/// transport part violates CFL and kLinearSolveFailure when CG hits the iteration cap.
DirectorField advance_director(const DirectorField& d, const MacVelocity& w, const GLParams& p,
                               double dt, const DirectorStepOptions& opts = {});

/// max over cells of |d|.
double max_norm_check(const DirectorField& d);

}  // namespace nlcflow

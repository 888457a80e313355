#include "momentum_solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "density_transport.hpp"
#include "error.hpp"
#include "linear_solver.hpp"
#include "operators.hpp"

namespace nlcflow {

void FlowParams::validate() const {
  if (!(nu > 0.0)) throw Error(ErrorCode::kConfigError, "viscosity must be positive");
  if (!(lambda > 0.0)) throw Error(ErrorCode::kConfigError, "lambda must be positive");
  if (!(tol_proj > 0.0) || !(tol_lin > 0.0))
    throw Error(ErrorCode::kConfigError, "solver tolerances must be positive");
  if (max_cg < 1) throw Error(ErrorCode::kConfigError, "max_cg must be at least 1");
}

MacVelocity face_density(const ScalarField& rho) {
  const GridSpec& g = rho.grid;
  MacVelocity out(g);
  for (int j = 0; j < g.ny; ++j) {
    out.u(0, j) = rho(0, j);
    out.u(g.nx, j) = rho(g.nx - 1, j);
    for (int i = 1; i < g.nx; ++i) out.u(i, j) = 0.5 * (rho(i - 1, j) + rho(i, j));
  }
  for (int i = 0; i < g.nx; ++i) {
    out.v(i, 0) = rho(i, 0);
    out.v(i, g.ny) = rho(i, g.ny - 1);
    for (int j = 1; j < g.ny; ++j) out.v(i, j) = 0.5 * (rho(i, j - 1) + rho(i, j));
  }
  return out;
}

MacVelocity elastic_force(const DirectorField& d, const GLParams& p) {
  const GridSpec& g = d.grid;
  const CellVectorField r = gl_residual(d, p.eta);
  Array2D fx(g.nx, g.ny), fy(g.nx, g.ny);
  for (int k = 0; k < 2; ++k) {
    const CellGradient gr = cell_gradient(d.component(k));
    const auto& rk = r.component(k).data();
    for (std::size_t n = 0; n < rk.size(); ++n) {
      fx.data()[n] -= p.lambda * rk[n] * gr.dx.data()[n];
      fy.data()[n] -= p.lambda * rk[n] * gr.dy.data()[n];
    }
  }
  return cells_to_faces(g, fx, fy);
}

MacVelocity momentum_advection(const MacVelocity& w) {
  const GridSpec& g = w.grid;
  const double ihx = 1.0 / g.hx(), ihy = 1.0 / g.hy();
  MacVelocity out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) {
      const double u = w.u(i, j);
      const double v = 0.25 * (w.v(i - 1, j) + w.v(i, j) + w.v(i - 1, j + 1) + w.v(i, j + 1));
      const double dudx = u > 0.0 ? (u - w.u(i - 1, j)) * ihx : (w.u(i + 1, j) - u) * ihx;
      const double dudy = v > 0.0 ? (u - w.u_at(i, j - 1)) * ihy : (w.u_at(i, j + 1) - u) * ihy;
      out.u(i, j) = u * dudx + v * dudy;
    }
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double v = w.v(i, j);
      const double u = 0.25 * (w.u(i, j - 1) + w.u(i + 1, j - 1) + w.u(i, j) + w.u(i + 1, j));
      const double dvdx = u > 0.0 ? (v - w.v_at(i - 1, j)) * ihx : (w.v_at(i + 1, j) - v) * ihx;
      const double dvdy = v > 0.0 ? (v - w.v(i, j - 1)) * ihy : (w.v(i, j + 1) - v) * ihy;
      out.v(i, j) = u * dvdx + v * dvdy;
    }
  return out;
}

namespace {

// Unknowns are the interior faces of one velocity component. `line` is the direction
// normal to that face family: the x-velocity couples to wall faces (value 0) along x and
// to the mirrored ghost (value -u) along y.
struct ComponentSystem {
  FivePointMatrix matrix;
  std::vector<double> rhs;
};

ComponentSystem build_u_system(const MacVelocity& rho_f, const MacVelocity& rhs_faces,
                               double nu, double dt) {
  const GridSpec& g = rho_f.grid;
  const int cols = g.nx - 1, rows = g.ny;
  ComponentSystem s{FivePointMatrix(cols, rows), std::vector<double>(static_cast<std::size_t>(cols) * rows)};
  const double ax = nu / (g.hx() * g.hx()), ay = nu / (g.hy() * g.hy());
  for (int j = 0; j < rows; ++j)
    for (int c = 0; c < cols; ++c) {
      const int i = c + 1;
      const std::size_t k = static_cast<std::size_t>(j) * cols + c;
      const double cy = (j == 0 || j == rows - 1) ? 3.0 : 2.0;
      s.matrix.center[k] = rho_f.u(i, j) / dt + 2.0 * ax + cy * ay;
      if (c > 0) s.matrix.west[k] = -ax;
      if (j > 0) s.matrix.south[k] = -ay;
      s.rhs[k] = rhs_faces.u(i, j);
    }
  return s;
}

ComponentSystem build_v_system(const MacVelocity& rho_f, const MacVelocity& rhs_faces,
                               double nu, double dt) {
  const GridSpec& g = rho_f.grid;
  const int cols = g.nx, rows = g.ny - 1;
  ComponentSystem s{FivePointMatrix(cols, rows), std::vector<double>(static_cast<std::size_t>(cols) * rows)};
  const double ax = nu / (g.hx() * g.hx()), ay = nu / (g.hy() * g.hy());
  for (int r = 0; r < rows; ++r)
    for (int i = 0; i < cols; ++i) {
      const int j = r + 1;
      const std::size_t k = static_cast<std::size_t>(r) * cols + i;
      const double cx = (i == 0 || i == cols - 1) ? 3.0 : 2.0;
      s.matrix.center[k] = rho_f.v(i, j) / dt + cx * ax + 2.0 * ay;
      if (i > 0) s.matrix.west[k] = -ax;
      if (r > 0) s.matrix.south[k] = -ay;
      s.rhs[k] = rhs_faces.v(i, j);
    }
  return s;
}

void solve_or_throw(const ComponentSystem& s, std::vector<double>& x, double tol, int max_iter,
                    const char* what) {
  SolveControl control;
  control.rel_tol = tol;
  control.max_iter = max_iter;
  const SolveStats stats = pcg(s.matrix, s.rhs, x, control);
  if (!stats.converged) {
    std::ostringstream msg;
    msg << what << " solve stalled after " << stats.iterations << " iterations (residual "
        << stats.residual_l2 << ")";
    throw Error(ErrorCode::kLinearSolveFailure, msg.str());
  }
}

}  // namespace

MacVelocity predict_velocity(const ScalarField& rho, const MacVelocity& w, const DirectorField& d,
                             const MacVelocity& accel, const FlowParams& flow, const GLParams& gl,
                             double dt, const ScalarField* pressure) {
  const GridSpec& g = rho.grid;
  const double cfl = cfl_number(w, dt);
  if (cfl > 1.0) {
    std::ostringstream msg;
    msg << "momentum transport has CFL number " << cfl << " > 1";
    throw Error(ErrorCode::kCflViolation, msg.str());
  }
  const MacVelocity rho_f = face_density(rho);
  const MacVelocity adv = momentum_advection(w);
  GLParams elastic = gl;
  elastic.lambda = flow.lambda;
  const MacVelocity fel = elastic_force(d, elastic);

  MacVelocity rhs(g);
  if (pressure) rhs = axpby(0.0, rhs, -1.0, gradient_to_faces(*pressure));
  for (std::size_t n = 0; n < rhs.u.size(); ++n) {
    const double r = rho_f.u.data()[n];
    rhs.u.data()[n] += r / dt * w.u.data()[n] - r * adv.u.data()[n] + fel.u.data()[n] +
                      r * accel.u.data()[n];
  }
  for (std::size_t n = 0; n < rhs.v.size(); ++n) {
    const double r = rho_f.v.data()[n];
    rhs.v.data()[n] += r / dt * w.v.data()[n] - r * adv.v.data()[n] + fel.v.data()[n] +
                      r * accel.v.data()[n];
  }

  MacVelocity out(g);
  {
    const ComponentSystem su = build_u_system(rho_f, rhs, flow.nu, dt);
    std::vector<double> x(su.rhs.size());
    for (int j = 0; j < g.ny; ++j)
      for (int i = 1; i < g.nx; ++i) x[static_cast<std::size_t>(j) * (g.nx - 1) + i - 1] = w.u(i, j);
    solve_or_throw(su, x, flow.tol_lin, flow.max_cg, "x-momentum");
    for (int j = 0; j < g.ny; ++j)
      for (int i = 1; i < g.nx; ++i) out.u(i, j) = x[static_cast<std::size_t>(j) * (g.nx - 1) + i - 1];
  }
  {
    const ComponentSystem sv = build_v_system(rho_f, rhs, flow.nu, dt);
    std::vector<double> x(sv.rhs.size());
    for (int j = 1; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) x[static_cast<std::size_t>(j - 1) * g.nx + i] = w.v(i, j);
    solve_or_throw(sv, x, flow.tol_lin, flow.max_cg, "y-momentum");
    for (int j = 1; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) out.v(i, j) = x[static_cast<std::size_t>(j - 1) * g.nx + i];
  }
  return out;
}

Projection project(const ScalarField& rho, const MacVelocity& v_star, double dt,
                   const FlowParams& flow, const ScalarField* warm_start) {
  const GridSpec& g = rho.grid;
  const MacVelocity rho_f = face_density(rho);
  const double ihx2 = 1.0 / (g.hx() * g.hx()), ihy2 = 1.0 / (g.hy() * g.hy());

  FivePointMatrix a(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
      double c = 0.0;
      if (i > 0) {
        a.west[k] = -ihx2 / rho_f.u(i, j);
        c -= a.west[k];
      }
      if (i < g.nx - 1) c += ihx2 / rho_f.u(i + 1, j);
      if (j > 0) {
        a.south[k] = -ihy2 / rho_f.v(i, j);
        c -= a.south[k];
      }
      if (j < g.ny - 1) c += ihy2 / rho_f.v(i, j + 1);
      a.center[k] = c;
    }

  const ScalarField div = divergence(v_star);
  std::vector<double> b(g.cells());
  double sum = 0.0;
  for (std::size_t n = 0; n < b.size(); ++n) {
    b[n] = -div.values.data()[n] / dt;
    sum += b[n];
  }
  // the telescoping sum of face fluxes cancels up to round-off of the flux magnitudes
  double flux_scale = 0.0;
  for (double x : v_star.u.data()) flux_scale += 2.0 * std::abs(x) / g.hx();
  for (double x : v_star.v.data()) flux_scale += 2.0 * std::abs(x) / g.hy();
  flux_scale /= dt;
  if (std::abs(sum) > 1e-9 * flux_scale) {
    std::ostringstream msg;
    msg << "pressure right-hand side has mean " << sum / b.size() << " (boundary fluxes nonzero?)";
    throw Error(ErrorCode::kIncompatibleRhs, msg.str());
  }
  const double mean_b = sum / static_cast<double>(b.size());
  for (double& x : b) x -= mean_b;

  Projection out{v_star, ScalarField(g, BoundaryKind::kNeumannZero), 0};
  std::vector<double> q = warm_start ? warm_start->values.data() : std::vector<double>(g.cells(), 0.0);
  SolveControl control;
  control.rel_tol = 0.0;
  control.abs_inf_tol = 0.01 * flow.tol_proj / dt;
  control.max_iter = flow.max_cg;
  const SolveStats stats = pcg(a, b, q, control);
  out.iterations = stats.iterations;
  if (!stats.converged) {
    std::ostringstream msg;
    msg << "pressure solve stalled after " << stats.iterations << " iterations (residual "
        << stats.residual_inf << ")";
    throw Error(ErrorCode::kLinearSolveFailure, msg.str());
  }
  long double qsum = 0.0L;
  for (double x : q) qsum += x;
  const double qmean = static_cast<double>(qsum / q.size());
  for (double& x : q) x -= qmean;
  out.pressure.values.data() = std::move(q);

  const ScalarField& p = out.pressure;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i)
      out.velocity.u(i, j) -= dt / rho_f.u(i, j) * (p(i, j) - p(i - 1, j)) / g.hx();
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out.velocity.v(i, j) -= dt / rho_f.v(i, j) * (p(i, j) - p(i, j - 1)) / g.hy();

  const double div_after = norm(divergence(out.velocity), NormKind::kLinf);
  if (div_after > flow.tol_proj) {
    std::ostringstream msg;
    msg << "projected divergence " << div_after << " exceeds tol_proj " << flow.tol_proj;
    throw Error(ErrorCode::kLinearSolveFailure, msg.str());
  }
  return out;
}

double poincare_constant(const GridSpec& g) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 1.0 / std::sqrt(pi2 * (1.0 / (g.lx * g.lx) + 1.0 / (g.ly * g.ly)));
}

}  // namespace nlcflow

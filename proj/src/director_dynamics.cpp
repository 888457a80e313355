#include "director_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "density_transport.hpp"
#include "error.hpp"
#include "operators.hpp"

namespace nlcflow {

void GLParams::validate() const {
  if (!(gamma > 0.0) || !(eta > 0.0) || !(lambda > 0.0))
    throw Error(ErrorCode::kConfigError, "gamma, eta and lambda must be strictly positive");
}

CellVectorField gl_f(const DirectorField& d, double eta) {
  CellVectorField out(d.grid);
  for (int j = 0; j < d.grid.ny; ++j)
    for (int i = 0; i < d.grid.nx; ++i) {
      const auto f = gl_f_point(d.d1(i, j), d.d2(i, j), eta);
      out.c1(i, j) = f[0];
      out.c2(i, j) = f[1];
    }
  return out;
}

ScalarField gl_F(const DirectorField& d, double eta) {
  ScalarField out(d.grid);
  for (int j = 0; j < d.grid.ny; ++j)
    for (int i = 0; i < d.grid.nx; ++i) out(i, j) = gl_F_point(d.d1(i, j), d.d2(i, j), eta);
  return out;
}

CellVectorField gl_residual(const DirectorField& d, double eta) {
  CellVectorField out = gl_f(d, eta);
  for (int k = 0; k < 2; ++k) {
    const ScalarField lap = laplacian(d.component(k));
    auto& r = out.component(k).data();
    const auto& l = lap.values.data();
    for (std::size_t n = 0; n < r.size(); ++n) r[n] = l[n] - r[n];
  }
  return out;
}

double norm_l2(const CellVectorField& v) {
  double acc = 0.0;
  for (std::size_t n = 0; n < v.c1.size(); ++n)
    acc += v.c1.data()[n] * v.c1.data()[n] + v.c2.data()[n] * v.c2.data()[n];
  return std::sqrt(acc * v.grid.cell_area());
}

CellVectorField director_advection(const DirectorField& d, const MacVelocity& w) {
  const CellVelocity vc = cell_velocity(w);
  CellVectorField out(d.grid);
  for (int k = 0; k < 2; ++k) {
    const CellGradient gr = cell_gradient(d.component(k));
    auto& o = out.component(k).data();
    for (std::size_t n = 0; n < o.size(); ++n)
      o[n] = vc.u.data()[n] * gr.dx.data()[n] + vc.v.data()[n] * gr.dy.data()[n];
  }
  return out;
}

FivePointMatrix dirichlet_cell_matrix(const GridSpec& g, double shift, double scale) {
  FivePointMatrix a(g.nx, g.ny);
  const double ax = scale / (g.hx() * g.hx()), ay = scale / (g.hy() * g.hy());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
      // the linear ghost 2b - d adds one extra diagonal unit per boundary side
      const double cx = (i == 0 || i == g.nx - 1) ? 3.0 : 2.0;
      const double cy = (j == 0 || j == g.ny - 1) ? 3.0 : 2.0;
      a.center[k] = shift + cx * ax + cy * ay;
      if (i > 0) a.west[k] = -ax;
      if (j > 0) a.south[k] = -ay;
    }
  return a;
}

std::vector<double> dirichlet_boundary_term(const ScalarField& s) {
  const GridSpec& g = s.grid;
  std::vector<double> b(g.cells(), 0.0);
  const double ax = 2.0 / (g.hx() * g.hx()), ay = 2.0 / (g.hy() * g.hy());
  for (int j = 0; j < g.ny; ++j) {
    b[static_cast<std::size_t>(j) * g.nx] += ax * s.trace.west[j];
    b[static_cast<std::size_t>(j) * g.nx + g.nx - 1] += ax * s.trace.east[j];
  }
  for (int i = 0; i < g.nx; ++i) {
    b[i] += ay * s.trace.south[i];
    b[static_cast<std::size_t>(g.ny - 1) * g.nx + i] += ay * s.trace.north[i];
  }
  return b;
}

DirectorField advance_director(const DirectorField& d, const MacVelocity& w, const GLParams& p,
                               double dt, const DirectorStepOptions& opts) {
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "director step needs dt > 0");
  const double cfl = cfl_number(w, dt);
  if (cfl > 1.0) {
    std::ostringstream msg;
    msg << "director transport has CFL number " << cfl << " > 1";
    throw Error(ErrorCode::kCflViolation, msg.str());
  }
  const double c = p.gamma * dt;
  const double s = p.stabilization();
  const FivePointMatrix a = dirichlet_cell_matrix(d.grid, 1.0 + c * s, c);
  const CellVectorField adv = director_advection(d, w);
  const CellVectorField f = gl_f(d, p.eta);

  DirectorField next = d;
  SolveControl control;
  control.rel_tol = opts.tol_lin;
  control.abs_inf_tol = opts.abs_inf_tol;
  control.max_iter = opts.max_iter;
  for (int k = 0; k < 2; ++k) {
    const ScalarField& dk = d.component(k);
    std::vector<double> rhs = dirichlet_boundary_term(dk);
    const auto& x = dk.values.data();
    const auto& ak = adv.component(k).data();
    const auto& fk = f.component(k).data();
    for (std::size_t n = 0; n < rhs.size(); ++n)
      rhs[n] = x[n] - dt * ak[n] - c * (fk[n] - s * x[n]) + c * rhs[n];
    std::vector<double> sol = x;
    const SolveStats stats = pcg(a, rhs, sol, control);
    if (!stats.converged) {
      std::ostringstream msg;
      msg << "director solve stalled after " << stats.iterations << " iterations (residual "
          << stats.residual_l2 << ")";
      throw Error(ErrorCode::kLinearSolveFailure, msg.str());
    }
    next.component(k).values.data() = std::move(sol);
  }
  return next;
}

double max_norm_check(const DirectorField& d) {
  double m = 0.0;
  const auto& a = d.d1.values.data();
  const auto& b = d.d2.values.data();
  for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::hypot(a[n], b[n]));
  return m;
}

}  // namespace nlcflow

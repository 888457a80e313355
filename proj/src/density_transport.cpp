#include "density_transport.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "operators.hpp"

namespace nlcflow {

DensityState DensityState::initial(ScalarField rho) {
  DensityState s;
  const auto& x = rho.values.data();
  s.rho_min0 = *std::min_element(x.begin(), x.end());
  s.rho_max0 = *std::max_element(x.begin(), x.end());
  s.mass0 = total_mass(rho);
  s.l2_norm0 = norm(rho, NormKind::kL2);
  s.rho = std::move(rho);
  return s;
}

double total_mass(const ScalarField& rho) {
  long double acc = 0.0L;
  for (double v : rho.values.data()) acc += v;
  return static_cast<double>(acc * rho.grid.cell_area());
}

double cfl_number(const MacVelocity& w, double dt) {
  return dt * (w.max_abs_u() / w.grid.hx() + w.max_abs_v() / w.grid.hy());
}

DensityState advance_density(const DensityState& state, const MacVelocity& w, double dt) {
  const double cfl = cfl_number(w, dt);
  if (cfl > 1.0) {
    std::ostringstream msg;
    msg << "density step has CFL number " << cfl << " > 1 at dt = " << dt;
    throw Error(ErrorCode::kCflViolation, msg.str());
  }
  const GridSpec& g = state.rho.grid;
  const ScalarField& rho = state.rho;

  Array2D fu(g.nx + 1, g.ny), fv(g.nx, g.ny + 1);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) {
      const double u = w.u(i, j);
      fu(i, j) = u * (u > 0.0 ? rho(i - 1, j) : rho(i, j));
    }
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double v = w.v(i, j);
      fv(i, j) = v * (v > 0.0 ? rho(i, j - 1) : rho(i, j));
    }

  DensityState next = state;
  const double cx = dt / g.hx(), cy = dt / g.hy();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      next.rho(i, j) = rho(i, j) - (cx * (fu(i + 1, j) - fu(i, j)) + cy * (fv(i, j + 1) - fv(i, j)));
  return next;
}

TransportDiagnostics transport_diagnostics(const DensityState& state) {
  TransportDiagnostics d;
  const auto& x = state.rho.values.data();
  d.min = *std::min_element(x.begin(), x.end());
  d.max = *std::max_element(x.begin(), x.end());
  d.mass_drift = std::abs(total_mass(state.rho) - state.mass0);
  d.l2_drift = norm(state.rho, NormKind::kL2) - state.l2_norm0;
  return d;
}

}  // namespace nlcflow

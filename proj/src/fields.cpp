#include "fields.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace nlcflow {

GridSpec GridSpec::make(int nx, int ny, double lx, double ly) {
  if (nx < 4 || ny < 4) throw Error(ErrorCode::kInvalidArgument, "grid needs at least 4x4 cells");
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly))
    throw Error(ErrorCode::kInvalidArgument, "domain side lengths must be positive");
  return GridSpec{nx, ny, lx, ly};
}

BoundaryTrace BoundaryTrace::zero(const GridSpec& g) {
  BoundaryTrace t;
  t.west.assign(g.ny, 0.0);
  t.east.assign(g.ny, 0.0);
  t.south.assign(g.nx, 0.0);
  t.north.assign(g.nx, 0.0);
  return t;
}

BoundaryTrace BoundaryTrace::sample(const GridSpec& g,
                                    const std::function<double(double, double)>& fn) {
  BoundaryTrace t = zero(g);
  for (int j = 0; j < g.ny; ++j) {
    t.west[j] = fn(0.0, g.yc(j));
    t.east[j] = fn(g.lx, g.yc(j));
  }
  for (int i = 0; i < g.nx; ++i) {
    t.south[i] = fn(g.xc(i), 0.0);
    t.north[i] = fn(g.xc(i), g.ly);
  }
  return t;
}

ScalarField::ScalarField(const GridSpec& g, BoundaryKind k)
    : grid(g), values(g.nx, g.ny), kind(k), trace(BoundaryTrace::zero(g)) {}

ScalarField ScalarField::sample(const GridSpec& g,
                                const std::function<double(double, double)>& fn,
                                BoundaryKind k) {
  ScalarField s(g, k);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) s(i, j) = fn(g.xc(i), g.yc(j));
  if (k == BoundaryKind::kDirichlet) s.trace = BoundaryTrace::sample(g, fn);
  return s;
}

ScalarField ScalarField::dirichlet(const GridSpec& g,
                                   const std::function<double(double, double)>& fn) {
  return sample(g, fn, BoundaryKind::kDirichlet);
}

double ScalarField::at(int i, int j) const {
  const int nx = grid.nx, ny = grid.ny;
  if (i >= 0 && i < nx && j >= 0 && j < ny) return values(i, j);
  // exactly one index is out of range by one
  int ii = i, jj = j, ii2 = i, jj2 = j;
  double b = 0.0;
  if (i < 0) {
    ii = 0, ii2 = 1, b = trace.west[j];
  } else if (i >= nx) {
    ii = nx - 1, ii2 = nx - 2, b = trace.east[j];
  } else if (j < 0) {
    jj = 0, jj2 = 1, b = trace.south[i];
  } else {
    jj = ny - 1, jj2 = ny - 2, b = trace.north[i];
  }
  switch (kind) {
    case BoundaryKind::kDirichlet:
      return 2.0 * b - values(ii, jj);
    case BoundaryKind::kNeumannZero:
      return values(ii, jj);
    case BoundaryKind::kExtrapolate:
      return 2.0 * values(ii, jj) - values(ii2, jj2);
  }
  return values(ii, jj);
}

MacVelocity MacVelocity::sample(const GridSpec& g,
                                const std::function<double(double, double)>& fu,
                                const std::function<double(double, double)>& fv) {
  MacVelocity w(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) w.u(i, j) = fu(g.xf(i), g.yc(j));
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) w.v(i, j) = fv(g.xc(i), g.yf(j));
  return w;
}

double MacVelocity::u_at(int i, int j) const {
  if (j < 0) return -u(i, 0);
  if (j >= grid.ny) return -u(i, grid.ny - 1);
  return u(i, j);
}

double MacVelocity::v_at(int i, int j) const {
  if (i < 0) return -v(0, j);
  if (i >= grid.nx) return -v(grid.nx - 1, j);
  return v(i, j);
}

void MacVelocity::zero_normal_boundary() {
  for (int j = 0; j < grid.ny; ++j) u(0, j) = u(grid.nx, j) = 0.0;
  for (int i = 0; i < grid.nx; ++i) v(i, 0) = v(i, grid.ny) = 0.0;
}

namespace {
double max_abs(const std::vector<double>& x) {
  double m = 0.0;
  for (double a : x) m = std::max(m, std::abs(a));
  return m;
}
}  // namespace

double MacVelocity::max_abs_u() const { return max_abs(u.data()); }
double MacVelocity::max_abs_v() const { return max_abs(v.data()); }

DirectorField::DirectorField(const GridSpec& g)
    : grid(g), d1(g, BoundaryKind::kDirichlet), d2(g, BoundaryKind::kDirichlet) {}

DirectorField DirectorField::sample(const GridSpec& g,
                                    const std::function<double(double, double)>& f1,
                                    const std::function<double(double, double)>& f2) {
  DirectorField d(g);
  d.d1 = ScalarField::dirichlet(g, f1);
  d.d2 = ScalarField::dirichlet(g, f2);
  return d;
}

ScalarField axpby(double alpha, const ScalarField& a, double beta, const ScalarField& b) {
  ScalarField r = a;
  auto& x = r.values.data();
  const auto& y = b.values.data();
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = alpha * x[k] + beta * y[k];
  return r;
}

MacVelocity axpby(double alpha, const MacVelocity& a, double beta, const MacVelocity& b) {
  MacVelocity r = a;
  for (std::size_t k = 0; k < r.u.size(); ++k)
    r.u.data()[k] = alpha * r.u.data()[k] + beta * b.u.data()[k];
  for (std::size_t k = 0; k < r.v.size(); ++k)
    r.v.data()[k] = alpha * r.v.data()[k] + beta * b.v.data()[k];
  return r;
}

}  // namespace nlcflow

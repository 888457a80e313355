#include "operators.hpp"

#include <algorithm>
#include <cmath>

namespace nlcflow {

ScalarField divergence(const MacVelocity& w) {
  const GridSpec& g = w.grid;
  ScalarField out(g, BoundaryKind::kNeumannZero);
  const double ihx = 1.0 / g.hx(), ihy = 1.0 / g.hy();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = (w.u(i + 1, j) - w.u(i, j)) * ihx + (w.v(i, j + 1) - w.v(i, j)) * ihy;
  return out;
}

MacVelocity gradient_to_faces(const ScalarField& p) {
  const GridSpec& g = p.grid;
  MacVelocity out(g);
  const double ihx = 1.0 / g.hx(), ihy = 1.0 / g.hy();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) out.u(i, j) = (p.at(i, j) - p.at(i - 1, j)) * ihx;
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) out.v(i, j) = (p.at(i, j) - p.at(i, j - 1)) * ihy;
  return out;
}

ScalarField laplacian(const ScalarField& s) {
  ScalarField out = divergence(gradient_to_faces(s));
  out.kind = s.kind;
  out.trace = BoundaryTrace::zero(s.grid);
  return out;
}

namespace {

double face_weight(int i, int last) { return (i == 0 || i == last) ? 0.5 : 1.0; }

template <class F>
double reduce(const Array2D& a, NormKind kind, F&& weight) {
  double acc = 0.0;
  for (int j = 0; j < a.rows(); ++j)
    for (int i = 0; i < a.cols(); ++i) {
      const double x = std::abs(a(i, j));
      switch (kind) {
        case NormKind::kL1:
          acc += weight(i, j) * x;
          break;
        case NormKind::kL2:
          acc += weight(i, j) * x * x;
          break;
        default:
          acc = std::max(acc, x);
      }
    }
  return acc;
}

double scalar_h1_squared(const ScalarField& s) {
  const GridSpec& g = s.grid;
  const MacVelocity gr = gradient_to_faces(s);
  const double a = g.cell_area();
  double acc = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) acc += a * face_weight(i, g.nx) * gr.u(i, j) * gr.u(i, j);
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) acc += a * face_weight(j, g.ny) * gr.v(i, j) * gr.v(i, j);
  return acc;
}

double mac_h1_squared(const MacVelocity& w) {
  const GridSpec& g = w.grid;
  const double a = g.cell_area(), ihx = 1.0 / g.hx(), ihy = 1.0 / g.hy();
  double acc = 0.0;
  // u: x-differences at cell centers, y-differences at corners (wall rows via ghosts)
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double du = (w.u(i + 1, j) - w.u(i, j)) * ihx;
      acc += a * du * du;
    }
  for (int j = -1; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) {
      const double du = (w.u_at(i, j + 1) - w.u_at(i, j)) * ihy;
      acc += a * face_weight(i, g.nx) * face_weight(j + 1, g.ny) * du * du;
    }
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double dv = (w.v(i, j + 1) - w.v(i, j)) * ihy;
      acc += a * dv * dv;
    }
  for (int j = 0; j <= g.ny; ++j)
    for (int i = -1; i < g.nx; ++i) {
      const double dv = (w.v_at(i + 1, j) - w.v_at(i, j)) * ihx;
      acc += a * face_weight(i + 1, g.nx) * face_weight(j, g.ny) * dv * dv;
    }
  return acc;
}

double finish(double acc, NormKind kind) {
  return (kind == NormKind::kL2 || kind == NormKind::kH1Semi) ? std::sqrt(acc) : acc;
}

}  // namespace

double norm(const ScalarField& s, NormKind kind) {
  if (kind == NormKind::kH1Semi) return std::sqrt(scalar_h1_squared(s));
  const double a = s.grid.cell_area();
  return finish(reduce(s.values, kind, [a](int, int) { return a; }), kind);
}

double norm(const MacVelocity& w, NormKind kind) {
  if (kind == NormKind::kH1Semi) return std::sqrt(mac_h1_squared(w));
  const GridSpec& g = w.grid;
  const double a = g.cell_area();
  const double ru = reduce(w.u, kind, [&](int i, int) { return a * face_weight(i, g.nx); });
  const double rv = reduce(w.v, kind, [&](int, int j) { return a * face_weight(j, g.ny); });
  if (kind == NormKind::kLinf) return std::max(ru, rv);
  return finish(ru + rv, kind);
}

double norm(const DirectorField& d, NormKind kind) {
  if (kind == NormKind::kLinf) return std::max(norm(d.d1, kind), norm(d.d2, kind));
  if (kind == NormKind::kL1) return norm(d.d1, kind) + norm(d.d2, kind);
  const double a = norm(d.d1, kind), b = norm(d.d2, kind);
  return std::sqrt(a * a + b * b);
}

double inner(const ScalarField& a, const ScalarField& b) {
  double acc = 0.0;
  const auto& x = a.values.data();
  const auto& y = b.values.data();
  for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * y[k];
  return acc * a.grid.cell_area();
}

double inner(const MacVelocity& a, const MacVelocity& b) {
  const GridSpec& g = a.grid;
  double acc = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) acc += face_weight(i, g.nx) * a.u(i, j) * b.u(i, j);
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) acc += face_weight(j, g.ny) * a.v(i, j) * b.v(i, j);
  return acc * g.cell_area();
}

CellGradient cell_gradient(const ScalarField& s) {
  const GridSpec& g = s.grid;
  CellGradient out{Array2D(g.nx, g.ny), Array2D(g.nx, g.ny)};
  const double i2hx = 0.5 / g.hx(), i2hy = 0.5 / g.hy();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      out.dx(i, j) = (s.at(i + 1, j) - s.at(i - 1, j)) * i2hx;
      out.dy(i, j) = (s.at(i, j + 1) - s.at(i, j - 1)) * i2hy;
    }
  return out;
}

CellVelocity cell_velocity(const MacVelocity& w) {
  const GridSpec& g = w.grid;
  CellVelocity out{Array2D(g.nx, g.ny), Array2D(g.nx, g.ny)};
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      out.u(i, j) = 0.5 * (w.u(i, j) + w.u(i + 1, j));
      out.v(i, j) = 0.5 * (w.v(i, j) + w.v(i, j + 1));
    }
  return out;
}

MacVelocity cells_to_faces(const GridSpec& g, const Array2D& cx, const Array2D& cy) {
  MacVelocity out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) out.u(i, j) = 0.5 * (cx(i - 1, j) + cx(i, j));
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) out.v(i, j) = 0.5 * (cy(i, j - 1) + cy(i, j));
  return out;
}

double elastic_identity_residual(const DirectorField& d) {
  const GridSpec& g = d.grid;
  const double i2hx = 0.5 / g.hx(), i2hy = 0.5 / g.hy();
  const CellGradient g1 = cell_gradient(d.d1), g2 = cell_gradient(d.d2);
  const ScalarField l1 = laplacian(d.d1), l2 = laplacian(d.d2);

  // T = grad d (.) grad d and |grad d|^2 at cell centers
  Array2D txx(g.nx, g.ny), txy(g.nx, g.ny), tyy(g.nx, g.ny), sq(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double ax = g1.dx(i, j), ay = g1.dy(i, j), bx = g2.dx(i, j), by = g2.dy(i, j);
      txx(i, j) = ax * ax + bx * bx;
      txy(i, j) = ax * ay + bx * by;
      tyy(i, j) = ay * ay + by * by;
      sq(i, j) = txx(i, j) + tyy(i, j);
    }

  double res = 0.0;
  for (int j = 2; j < g.ny - 2; ++j)
    for (int i = 2; i < g.nx - 2; ++i) {
      const double lhs_x = (txx(i + 1, j) - txx(i - 1, j)) * i2hx + (txy(i, j + 1) - txy(i, j - 1)) * i2hy;
      const double lhs_y = (txy(i + 1, j) - txy(i - 1, j)) * i2hx + (tyy(i, j + 1) - tyy(i, j - 1)) * i2hy;
      const double rhs_x = 0.5 * (sq(i + 1, j) - sq(i - 1, j)) * i2hx + l1(i, j) * g1.dx(i, j) +
                           l2(i, j) * g2.dx(i, j);
      const double rhs_y = 0.5 * (sq(i, j + 1) - sq(i, j - 1)) * i2hy + l1(i, j) * g1.dy(i, j) +
                           l2(i, j) * g2.dy(i, j);
      res = std::max({res, std::abs(lhs_x - rhs_x), std::abs(lhs_y - rhs_y)});
    }
  return res;
}

}  // namespace nlcflow

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace nlcflow {

/// Uniform rectangular grid on [0,lx] x [0,ly] with nx x ny cells. Scalars live at
/// cell centers, the x-velocity on vertical faces and the y-velocity on horizontal faces.
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double lx = 1.0;
  double ly = 1.0;

  /// Validating constructor; throws Error(kInvalidArgument) for nx, ny < 4 or non-positive sides.
  static GridSpec make(int nx, int ny, double lx, double ly);

  double hx() const { return lx / nx; }
  double hy() const { return ly / ny; }
  double cell_area() const { return hx() * hy(); }
  double xc(int i) const { return (i + 0.5) * hx(); }
  double yc(int j) const { return (j + 0.5) * hy(); }
  double xf(int i) const { return i * hx(); }
  double yf(int j) const { return j * hy(); }
  std::size_t cells() const { return static_cast<std::size_t>(nx) * ny; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Dense row-major 2D array, `cols` fastest.
class Array2D {
 public:
  Array2D() = default;
  Array2D(int cols, int rows, double fill = 0.0)
      : cols_(cols), rows_(rows), data_(static_cast<std::size_t>(cols) * rows, fill) {}

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * cols_ + i]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(j) * cols_ + i]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Array2D&, const Array2D&) = default;

 private:
  int cols_ = 0;
  int rows_ = 0;
  std::vector<double> data_;
};

enum class BoundaryKind { kDirichlet, kNeumannZero, kExtrapolate };

/// Boundary values at the midpoints of the boundary faces. west/east hold ny values
/// (indexed by j), south/north hold nx values (indexed by i).
struct BoundaryTrace {
  std::vector<double> west, east, south, north;

  static BoundaryTrace zero(const GridSpec& g);
  static BoundaryTrace sample(const GridSpec& g, const std::function<double(double, double)>& fn);

  friend bool operator==(const BoundaryTrace&, const BoundaryTrace&) = default;
};

/// Cell-centered scalar with a boundary rule that resolves one layer of ghost cells.
struct ScalarField {
  GridSpec grid;
  Array2D values;
  BoundaryKind kind = BoundaryKind::kNeumannZero;
  BoundaryTrace trace;  // used only for kDirichlet

  ScalarField() = default;
  ScalarField(const GridSpec& g, BoundaryKind k = BoundaryKind::kNeumannZero);

  static ScalarField sample(const GridSpec& g, const std::function<double(double, double)>& fn,
                            BoundaryKind k = BoundaryKind::kNeumannZero);
  static ScalarField dirichlet(const GridSpec& g, const std::function<double(double, double)>& fn);

  double& operator()(int i, int j) { return values(i, j); }
  double operator()(int i, int j) const { return values(i, j); }

  /// Interior value, or the ghost value when exactly one of i, j is one step outside.
  double at(int i, int j) const;
};

/// Face-staggered velocity: u is (nx+1) x ny on vertical faces, v is nx x (ny+1) on
/// horizontal faces. Boundary-face normal components are kept at zero (no-slip).
struct MacVelocity {
  GridSpec grid;
  Array2D u;
  Array2D v;

  MacVelocity() = default;
  explicit MacVelocity(const GridSpec& g) : grid(g), u(g.nx + 1, g.ny), v(g.nx, g.ny + 1) {}

  static MacVelocity sample(const GridSpec& g, const std::function<double(double, double)>& fu,
                            const std::function<double(double, double)>& fv);

  /// u with the zero-wall-velocity ghost rule in y (j = -1 or ny).
  double u_at(int i, int j) const;
  /// v with the zero-wall-velocity ghost rule in x (i = -1 or nx).
  double v_at(int i, int j) const;

  void zero_normal_boundary();
  double max_abs_u() const;
  double max_abs_v() const;
};

/// Two-component cell-centered director; both components carry Dirichlet traces.
struct DirectorField {
  GridSpec grid;
  ScalarField d1;
  ScalarField d2;

  DirectorField() = default;
  explicit DirectorField(const GridSpec& g);

  static DirectorField sample(const GridSpec& g, const std::function<double(double, double)>& f1,
                              const std::function<double(double, double)>& f2);

  ScalarField& component(int k) { return k == 0 ? d1 : d2; }
  const ScalarField& component(int k) const { return k == 0 ? d1 : d2; }
};

// Linear combinations used by the solvers and tests. Boundary data of `a` is kept.
ScalarField axpby(double alpha, const ScalarField& a, double beta, const ScalarField& b);
MacVelocity axpby(double alpha, const MacVelocity& a, double beta, const MacVelocity& b);

}  // namespace nlcflow

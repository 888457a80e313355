#pragma once

#include <vector>

namespace nlcflow {

/// Symmetric five-point operator on a cols x rows block of unknowns (row-major).
/// west[k] couples k with k-1 and south[k] couples k with k-cols; both are zero on the
/// first column / first row.
struct FivePointMatrix {
  int cols = 0;
  int rows = 0;
  std::vector<double> center, west, south;

  FivePointMatrix() = default;
  FivePointMatrix(int c, int r)
      : cols(c), rows(r), center(static_cast<std::size_t>(c) * r, 0.0), west(center), south(center) {}

  std::size_t size() const { return center.size(); }
  void apply(const std::vector<double>& x, std::vector<double>& y) const;
};

struct SolveControl {
  double rel_tol = 1e-10;      // stop when ||r||_2 <= rel_tol * ||b||_2 (if > 0)
  double abs_inf_tol = 0.0;    // or when ||r||_inf <= abs_inf_tol (if > 0)
  int max_iter = 2000;
};

struct SolveStats {
  int iterations = 0;
  double residual_l2 = 0.0;
  double residual_inf = 0.0;
  bool converged = false;
};

/// Conjugate gradients preconditioned with a zero-fill modified incomplete Cholesky
/// factorization.
/// `x` is the initial guess on entry. Convergence is confirmed on the true residual.
/// Singular consistent systems (pure Neumann) are accepted; the null component of x is
/// left to the caller.
SolveStats pcg(const FivePointMatrix& a, const std::vector<double>& b, std::vector<double>& x,
               const SolveControl& control);

}  // namespace nlcflow

#include "linear_solver.hpp"

#include <algorithm>
#include <cmath>

namespace nlcflow {

void FivePointMatrix::apply(const std::vector<double>& x, std::vector<double>& y) const {
  y.resize(x.size());
  const std::size_t nc = static_cast<std::size_t>(cols);
  for (int j = 0; j < rows; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * nc;
    for (std::size_t i = 0; i < nc; ++i) {
      const std::size_t k = row + i;
      double acc = center[k] * x[k];
      if (i > 0) acc += west[k] * x[k - 1];
      if (i + 1 < nc) acc += west[k + 1] * x[k + 1];
      if (j > 0) acc += south[k] * x[k - nc];
      if (j + 1 < rows) acc += south[k + nc] * x[k + nc];
      y[k] = acc;
    }
  }
}

namespace {

class IncompleteCholesky {
 public:
  // Modified variant: the dropped fill is lumped onto the diagonal with weight kOmega.
  static constexpr double kOmega = 0.97;

  explicit IncompleteCholesky(const FivePointMatrix& a) : a_(a), pivot_(a.size()) {
    const std::size_t nc = static_cast<std::size_t>(a.cols), n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
      double d = a.center[k];
      if (a.west[k] != 0.0) {
        const double fill = k - 1 + nc < n ? a.south[k - 1 + nc] : 0.0;
        d -= a.west[k] * (a.west[k] + kOmega * fill) / pivot_[k - 1];
      }
      if (a.south[k] != 0.0) {
        const double fill = (k - nc + 1) % nc != 0 ? a.west[k - nc + 1] : 0.0;
        d -= a.south[k] * (a.south[k] + kOmega * fill) / pivot_[k - nc];
      }
      // the last pivot of a singular Neumann operator can collapse to round-off
      if (!(d > 1e-12 * std::abs(a.center[k]))) d = a.center[k];
      pivot_[k] = d;
    }
    inv_pivot_.resize(n);
    for (std::size_t k = 0; k < n; ++k) inv_pivot_[k] = 1.0 / pivot_[k];
  }

  void solve(const std::vector<double>& r, std::vector<double>& z) const {
    const std::size_t nc = static_cast<std::size_t>(a_.cols), nr = static_cast<std::size_t>(a_.rows);
    const double* w = a_.west.data();
    const double* s = a_.south.data();
    const double* ip = inv_pivot_.data();
    z.resize(a_.size());
    double* x = z.data();
    for (std::size_t j = 0; j < nr; ++j) {
      const std::size_t row = j * nc;
      for (std::size_t i = 0; i < nc; ++i) {
        const std::size_t k = row + i;
        double t = r[k];
        if (i > 0) t -= w[k] * x[k - 1];
        if (j > 0) t -= s[k] * x[k - nc];
        x[k] = t * ip[k];
      }
    }
    for (std::size_t j = nr; j-- > 0;) {
      const std::size_t row = j * nc;
      for (std::size_t i = nc; i-- > 0;) {
        const std::size_t k = row + i;
        double t = 0.0;
        if (i + 1 < nc) t += w[k + 1] * x[k + 1];
        if (j + 1 < nr) t += s[k + nc] * x[k + nc];
        x[k] -= t * ip[k];
      }
    }
  }

 private:
  const FivePointMatrix& a_;
  std::vector<double> pivot_;
  std::vector<double> inv_pivot_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double inf_norm(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

SolveStats pcg(const FivePointMatrix& a, const std::vector<double>& b, std::vector<double>& x,
               const SolveControl& control) {
  const std::size_t n = a.size();
  x.resize(n, 0.0);
  const IncompleteCholesky precond(a);
  const double bnorm = std::sqrt(dot(b, b));

  std::vector<double> r(n), z(n), p(n), q(n);
  SolveStats stats;

  auto true_residual = [&] {
    a.apply(x, q);
    for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - q[k];
    stats.residual_l2 = std::sqrt(dot(r, r));
    stats.residual_inf = inf_norm(r);
  };
  auto done = [&](double l2, double linf) {
    if (control.rel_tol > 0.0 && l2 <= control.rel_tol * bnorm) return true;
    if (control.abs_inf_tol > 0.0 && linf <= control.abs_inf_tol) return true;
    return l2 == 0.0;
  };

  true_residual();
  while (!done(stats.residual_l2, stats.residual_inf)) {
    if (stats.iterations >= control.max_iter) return stats;
    // one CG cycle, restarted from the true residual if the recurrence drifts
    const int cycle_start = stats.iterations;
    precond.solve(r, z);
    p = z;
    double rz = dot(r, z);
    while (stats.iterations < control.max_iter) {
      a.apply(p, q);
      const double pq = dot(p, q);
      if (!(pq > 0.0)) break;
      const double alpha = rz / pq;
      for (std::size_t k = 0; k < n; ++k) {
        x[k] += alpha * p[k];
        r[k] -= alpha * q[k];
      }
      ++stats.iterations;
      if (done(std::sqrt(dot(r, r)), inf_norm(r))) break;
      precond.solve(r, z);
      const double rz_new = dot(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    true_residual();
    if (cycle_start == stats.iterations && !done(stats.residual_l2, stats.residual_inf)) return stats;
  }
  stats.converged = true;
  return stats;
}

}  // namespace nlcflow

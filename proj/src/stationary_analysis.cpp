#include "stationary_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"
#include "operators.hpp"

namespace nlcflow {

double energy_E(const DirectorField& d, double eta) {
  const double g1 = norm(d.d1, NormKind::kH1Semi), g2 = norm(d.d2, NormKind::kH1Semi);
  double pot = 0.0;
  for (std::size_t n = 0; n < d.d1.values.size(); ++n)
    pot += gl_F_point(d.d1.values.data()[n], d.d2.values.data()[n], eta);
  return 0.5 * (g1 * g1 + g2 * g2) + pot * d.grid.cell_area();
}

double energy_gap(const DirectorField& d, const DirectorField& ref, double eta) {
  // |a|^2 - |b|^2 = (a-b).(a+b) per face gradient, and F(d)-F(r) via (m_d - m_r)(m_d + m_r)
  const GridSpec& g = d.grid;
  double grad = 0.0;
  for (int k = 0; k < 2; ++k) {
    const MacVelocity a = gradient_to_faces(d.component(k));
    const MacVelocity b = gradient_to_faces(ref.component(k));
    const MacVelocity diff = axpby(1.0, a, -1.0, b);
    const MacVelocity sum = axpby(1.0, a, 1.0, b);
    grad += inner(diff, sum);
  }
  double pot = 0.0;
  for (std::size_t n = 0; n < d.d1.values.size(); ++n) {
    const double a1 = d.d1.values.data()[n], a2 = d.d2.values.data()[n];
    const double b1 = ref.d1.values.data()[n], b2 = ref.d2.values.data()[n];
    const double dm = (a1 - b1) * (a1 + b1) + (a2 - b2) * (a2 + b2);  // m_d - m_r
    const double sm = a1 * a1 + a2 * a2 + b1 * b1 + b2 * b2 - 2.0;     // m_d + m_r
    pot += dm * sm / (4.0 * eta * eta);
  }
  return 0.5 * grad + pot * g.cell_area();
}

DirectorField harmonic_extension(const DirectorField& trace_source) {
  const GridSpec& g = trace_source.grid;
  const FivePointMatrix a = dirichlet_cell_matrix(g, 0.0, 1.0);
  DirectorField out = trace_source;
  SolveControl control;
  control.rel_tol = 1e-13;
  control.max_iter = 20000;
  for (int k = 0; k < 2; ++k) {
    const std::vector<double> b = dirichlet_boundary_term(trace_source.component(k));
    std::vector<double> x(b.size(), 0.0);
    const SolveStats stats = pcg(a, b, x, control);
    if (!stats.converged)
      throw Error(ErrorCode::kLinearSolveFailure, "harmonic extension did not converge");
    out.component(k).values.data() = std::move(x);
  }
  return out;
}

StationaryResult solve_stationary(const DirectorField& trace_source, double eta,
                                  const StationaryOptions& opts) {
  StationaryResult result;
  result.d_inf = harmonic_extension(trace_source);
  const MacVelocity still(trace_source.grid);
  GLParams flow;
  flow.gamma = 1.0;
  flow.eta = eta;
  DirectorStepOptions step;
  // The linear residual of a flow step equals gamma dt (Laplacian d - f(d)) at a fixed point.
  const GridSpec& g = trace_source.grid;
  step.tol_lin = 0.0;
  step.abs_inf_tol = 0.1 * opts.tol_stationary * opts.pseudo_dt / std::sqrt(g.lx * g.ly);

  result.energy_history.push_back(energy_E(result.d_inf, eta));
  result.residual = norm_l2(gl_residual(result.d_inf, eta));
  while (result.residual >= opts.tol_stationary) {
    if (result.iterations >= opts.max_iter) {
      std::ostringstream msg;
      msg << "stationary residual " << result.residual << " after " << result.iterations
          << " flow steps (tolerance " << opts.tol_stationary << ")";
      throw Error(ErrorCode::kMaxIterations, msg.str());
    }
    result.d_inf = advance_director(result.d_inf, still, flow, opts.pseudo_dt, step);
    ++result.iterations;
    result.energy_history.push_back(energy_E(result.d_inf, eta));
    result.residual = norm_l2(gl_residual(result.d_inf, eta));
  }
  result.energy = energy_E(result.d_inf, eta);
  return result;
}

ProbeResult lojasiewicz_probe(const std::vector<LojasiewiczSample>& samples) {
  ProbeResult out;
  for (const auto& s : samples)
    if (s.gap > 0.0 && s.gap < 1.0 && s.residual > 0.0 && s.residual < 1.0)
      out.retained.push_back(s);
  if (out.retained.size() < 5) {
    std::ostringstream msg;
    msg << "only " << out.retained.size() << " usable samples (need 5)";
    throw Error(ErrorCode::kInsufficientSamples, msg.str());
  }
  out.q_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : out.retained)
    out.q_max = std::max(out.q_max, std::log(s.residual) / std::log(s.gap));
  // an exponent at or beyond 1 leaves no admissible theta; report the smallest positive one
  out.theta_est = std::clamp(1.0 - out.q_max, std::numeric_limits<double>::min(), 0.5);
  return out;
}

bool lojasiewicz_holds(const std::vector<LojasiewiczSample>& samples, double theta) {
  return std::all_of(samples.begin(), samples.end(), [theta](const LojasiewiczSample& s) {
    return s.residual >= std::pow(s.gap, 1.0 - theta);
  });
}

double predicted_kappa(double theta, double xi) {
  const double first = theta >= 0.5 ? std::numeric_limits<double>::infinity()
                                     : theta / (1.0 - 2.0 * theta);
  return std::min(first, xi / 2.0);
}

RateFit decay_rate_fit(const std::vector<double>& times, const std::vector<double>& values,
                       double window_fraction, double theta_est, double xi) {
  if (times.size() != values.size() || times.empty())
    throw Error(ErrorCode::kInvalidArgument, "decay fit needs matching non-empty series");
  const std::size_t n = times.size();
  const auto count = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(std::clamp(window_fraction, 0.0, 1.0) * n)));
  if (count > n) throw Error(ErrorCode::kDegenerateFit, "fewer than two samples in the fit window");
  const std::size_t first = n - count;

  double sx = 0.0, sy = 0.0;
  for (std::size_t k = first; k < n; ++k) {
    const double v = values[k];
    if (!std::isfinite(v) || !(v >= std::numeric_limits<double>::min())) {
      std::ostringstream msg;
      msg << "value " << v << " at t = " << times[k]
          << " reached the floating-point floor; decay is faster than algebraic";
      throw Error(ErrorCode::kDegenerateFit, msg.str());
    }
    sx += std::log1p(times[k]);
    sy += std::log(v);
  }
  const double mx = sx / count, my = sy / count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = first; k < n; ++k) {
    const double dx = std::log1p(times[k]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(values[k]) - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::kDegenerateFit, "fit window spans a single time");

  RateFit fit;
  fit.kappa_fit = -sxy / sxx;
  fit.theta_est = theta_est;
  fit.kappa_pred = predicted_kappa(theta_est, xi);
  fit.window_begin = times[first];
  fit.window_end = times[n - 1];
  fit.samples = static_cast<int>(count);
  return fit;
}

}  // namespace nlcflow

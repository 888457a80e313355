#pragma once

#include <utility>
#include <vector>

#include "director_dynamics.hpp"

namespace nlcflow {

/// E(d) = 1/2 ||grad d||^2 + int F(d), without the elastic coupling prefactor.
double energy_E(const DirectorField& d, double eta);

/// E(d) - E(ref) evaluated term by term as products of differences, which keeps relative
/// accuracy when d is close to ref. Both fields must share the boundary trace.
double energy_gap(const DirectorField& d, const DirectorField& ref, double eta);

struct StationaryResult {
  DirectorField d_inf;
  double residual = 0.0;  // ||Laplacian d - f(d)||_{L2}
  double energy = 0.0;
  int iterations = 0;
  std::vector<double> energy_history;  // E after the harmonic start and every flow step
};

struct StationaryOptions {
  double tol_stationary = 1e-9;
  double pseudo_dt = 1.0;
  int max_iter = 5000;
};

/// Solves Laplacian d - f(d) = 0 with the Dirichlet trace carried by `trace_source` (its
/// interior values are ignored) by the gradient flow of advance_director started from the
/// discrete harmonic extension. Throws Error(kMaxIterations) when the residual does not
/// fall below tol_stationary.
StationaryResult solve_stationary(const DirectorField& trace_source, double eta,
                                  const StationaryOptions& opts = {});

/// Discrete harmonic extension of the trace.
DirectorField harmonic_extension(const DirectorField& trace_source);

struct LojasiewiczSample {
  double gap = 0.0;       // |E(d(t)) - E_inf|
  double residual = 0.0;  // ||-Laplacian d + f(d)||
};

struct ProbeResult {
  double theta_est = 0.0;
  double q_max = 0.0;
  std::vector<LojasiewiczSample> retained;
};

/// Largest theta in (0, 1/2] with residual >= gap^(1-theta) on every retained sample.
/// Samples outside (0,1) x (0,1) are dropped; throws Error(kInsufficientSamples) when fewer
/// than five remain.
ProbeResult lojasiewicz_probe(const std::vector<LojasiewiczSample>& samples);

/// Re-checks residual >= gap^(1-theta) on every sample.
bool lojasiewicz_holds(const std::vector<LojasiewiczSample>& samples, double theta);

/// min{theta/(1-2 theta), xi/2}; the first branch is unbounded at theta = 1/2.
double predicted_kappa(double theta, double xi);

struct RateFit {
  double kappa_fit = 0.0;
  double kappa_pred = 0.0;
  double theta_est = 0.0;
  double window_begin = 0.0;
  double window_end = 0.0;
  int samples = 0;
};

/// Least-squares slope of log(values) against log(1+t) over the final `window_fraction`
/// of the samples; kappa_fit = -slope, kappa_pred = predicted_kappa(theta_est, xi).
/// Throws Error(kDegenerateFit) if a window value is not a positive normal double.
RateFit decay_rate_fit(const std::vector<double>& times, const std::vector<double>& values,
                       double window_fraction, double theta_est = 0.5, double xi = 0.0);

}  // namespace nlcflow

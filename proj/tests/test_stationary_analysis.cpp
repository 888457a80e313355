#include <cmath>
#include <limits>
#include <random>

#include "director_dynamics.hpp"
#include "doctest.h"
#include "error.hpp"
#include "stationary_analysis.hpp"
#include "support.hpp"

using namespace nlcflow;

namespace {

DirectorField uniform(const GridSpec& g, double a, double b) {
  return DirectorField::sample(g, [=](double, double) { return a; }, [=](double, double) { return b; });
}

DirectorField twisted_trace(const GridSpec& g) {
  const double pi = std::acos(-1.0);
  return DirectorField::sample(
      g, [&](double x, double y) { return std::cos(pi * x * (1.0 - y) + 0.3); },
      [&](double x, double y) { return std::sin(pi * x * (1.0 - y) + 0.3); });
}

std::vector<LojasiewiczSample> planted(double exponent, int n) {
  std::vector<LojasiewiczSample> s;
  for (int k = 0; k < n; ++k) {
    const double gap = std::pow(10.0, -1.0 - 0.25 * k);
    s.push_back({gap, std::pow(gap, exponent)});
  }
  return s;
}

}  // namespace

TEST_CASE("energy of simple directors") {
  const GridSpec g = GridSpec::make(8, 8, 1.0, 1.0);
  CHECK(energy_E(uniform(g, 0.6, 0.8), 0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(energy_E(uniform(g, 0.0, 0.0), 1.0) == doctest::Approx(0.25));
  const GridSpec r = GridSpec::make(8, 6, 2.0, 1.5);
  CHECK(energy_E(uniform(r, 0.0, 0.0), 1.0) == doctest::Approx(0.75));
}

TEST_CASE("energy gap agrees with the energy difference") {
  const GridSpec g = GridSpec::make(16, 16, 1.0, 1.0);
  std::mt19937 rng(2);
  const DirectorField a = testing::random_director(g, rng);
  DirectorField b = a;
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  for (double& x : b.d1.values.data()) x += u(rng);
  for (double& x : b.d2.values.data()) x += u(rng);
  CHECK(energy_gap(b, a, 0.5) == doctest::Approx(energy_E(b, 0.5) - energy_E(a, 0.5)).epsilon(1e-8));
  CHECK(energy_gap(a, a, 0.5) == 0.0);
}

TEST_CASE("stationary solve with a constant trace") {
  const GridSpec g = GridSpec::make(12, 10, 1.0, 1.0);
  const StationaryResult r = solve_stationary(uniform(g, 0.6, -0.8), 0.5);
  CHECK(r.residual <= 1e-10);
  CHECK(testing::max_abs_diff(r.d_inf.d1.values.data(), std::vector<double>(g.cells(), 0.6)) < 1e-12);
  CHECK(testing::max_abs_diff(r.d_inf.d2.values.data(), std::vector<double>(g.cells(), -0.8)) < 1e-12);
}

TEST_CASE("zero trace with large eta gives the zero director") {
  const GridSpec g = GridSpec::make(12, 12, 1.0, 1.0);
  const StationaryResult r = solve_stationary(uniform(g, 0.0, 0.0), 2.0);
  CHECK(r.residual <= 1e-9);
  CHECK(max_norm_check(r.d_inf) < 1e-9);

  // the flow also relaxes a perturbed interior back to zero
  std::mt19937 rng(4);
  DirectorField d = testing::random_director(g, rng);
  d.d1.trace = BoundaryTrace::zero(g);
  d.d2.trace = BoundaryTrace::zero(g);
  for (int k = 0; k < 12; ++k) d = advance_director(d, MacVelocity(g), GLParams{1.0, 2.0, 1.0}, 1.0);
  CHECK(max_norm_check(d) < 1e-9);
}

TEST_CASE("stationary solve on a twisted trace") {
  const GridSpec g = GridSpec::make(24, 24, 1.0, 1.0);
  const DirectorField trace = twisted_trace(g);
  const StationaryOptions opts;
  const StationaryResult r = solve_stationary(trace, 0.5, opts);
  CHECK(r.residual <= opts.tol_stationary);
  CHECK(norm_l2(gl_residual(r.d_inf, 0.5)) <= opts.tol_stationary);
  CHECK(r.energy == doctest::Approx(energy_E(r.d_inf, 0.5)));
  CHECK(r.d_inf.d1.trace == trace.d1.trace);
  CHECK(r.d_inf.d2.trace == trace.d2.trace);

  REQUIRE(r.energy_history.size() >= 2);
  for (std::size_t k = 1; k < r.energy_history.size(); ++k)
    CHECK(r.energy_history[k] <= r.energy_history[k - 1] + 1e-14);

  const DirectorField next = advance_director(r.d_inf, MacVelocity(g), GLParams{}, 1e-2);
  CHECK(testing::max_abs_diff(next.d1.values.data(), r.d_inf.d1.values.data()) <= 10 * 1e-10);
  CHECK(testing::max_abs_diff(next.d2.values.data(), r.d_inf.d2.values.data()) <= 10 * 1e-10);
}

TEST_CASE("stationary output is a local energy minimum") {
  const GridSpec g = GridSpec::make(16, 16, 1.0, 1.0);
  const double eta = 2.0;
  const StationaryResult r = solve_stationary(twisted_trace(g), eta);
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double eps = 1e-3;
  for (int trial = 0; trial < 20; ++trial) {
    DirectorField p = r.d_inf;
    for (double& x : p.d1.values.data()) x += eps * u(rng);
    for (double& x : p.d2.values.data()) x += eps * u(rng);
    CHECK(energy_E(p, eta) >= r.energy - 1e-8);
  }
}

TEST_CASE("stationary solve reports MaxIterations") {
  const GridSpec g = GridSpec::make(16, 16, 1.0, 1.0);
  StationaryOptions opts;
  opts.max_iter = 1;
  try {
    solve_stationary(twisted_trace(g), 0.5, opts);
    FAIL("expected MaxIterations");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMaxIterations);
  }
}

TEST_CASE("harmonic extension solves the discrete Laplace equation") {
  const GridSpec g = GridSpec::make(16, 12, 1.0, 1.0);
  const DirectorField h = harmonic_extension(twisted_trace(g));
  const CellVectorField r = gl_residual(h, 1e300);
  CHECK(testing::max_abs(r.c1.data()) < 1e-7);
  CHECK(testing::max_abs(r.c2.data()) < 1e-7);
}

TEST_CASE("Lojasiewicz probe inverts the defining relation") {
  CHECK(lojasiewicz_probe(planted(0.75, 10)).theta_est == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(lojasiewicz_probe(planted(0.5, 10)).theta_est == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(lojasiewicz_probe(planted(0.2, 10)).theta_est == 0.5);
  for (double theta : {0.05, 0.1, 0.3, 0.4, 0.49}) {
    const ProbeResult p = lojasiewicz_probe(planted(1.0 - theta, 12));
    CHECK(std::abs(p.theta_est - theta) <= 1e-12);
    CHECK(lojasiewicz_holds(p.retained, p.theta_est));
  }
  // the tightest sample decides
  auto s = planted(0.6, 8);
  s.push_back({1e-3, std::pow(1e-3, 0.7)});
  const ProbeResult p = lojasiewicz_probe(s);
  CHECK(p.theta_est == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(lojasiewicz_holds(s, p.theta_est));
  CHECK_FALSE(lojasiewicz_holds(s, p.theta_est + 0.01));
}

TEST_CASE("Lojasiewicz probe filters samples") {
  auto s = planted(0.75, 5);
  s.push_back({1.5, 0.1});
  s.push_back({0.1, 2.0});
  s.push_back({0.0, 0.1});
  s.push_back({0.1, 0.0});
  const ProbeResult p = lojasiewicz_probe(s);
  CHECK(p.retained.size() == 5);
  try {
    lojasiewicz_probe(planted(0.75, 4));
    FAIL("expected InsufficientSamples");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInsufficientSamples);
  }
}

TEST_CASE("predicted decay exponent") {
  CHECK(predicted_kappa(0.25, 1.0) == doctest::Approx(0.5));
  CHECK(predicted_kappa(0.5, 1.0) == doctest::Approx(0.5));
  CHECK(predicted_kappa(0.1, 4.0) == doctest::Approx(0.125));
  CHECK(predicted_kappa(0.4, 3.0) == doctest::Approx(1.5));
}

TEST_CASE("decay rate fit") {
  std::vector<double> t, v, c;
  for (int k = 0; k < 50; ++k) {
    t.push_back(0.5 * k);
    v.push_back(std::pow(1.0 + t.back(), -2.0));
    c.push_back(3.0);
  }
  const RateFit f = decay_rate_fit(t, v, 0.5, 0.25, 1.0);
  CHECK(std::abs(f.kappa_fit - 2.0) <= 1e-6);
  CHECK(f.kappa_pred == doctest::Approx(0.5));
  CHECK(f.samples == 25);
  CHECK(f.window_begin == t[25]);
  CHECK(f.window_end == t.back());
  CHECK(std::abs(decay_rate_fit(t, c, 1.0).kappa_fit) <= 1e-12);

  auto z = v;
  z.back() = 0.0;
  try {
    decay_rate_fit(t, z, 0.5);
    FAIL("expected DegenerateFit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateFit);
  }
  z.back() = std::numeric_limits<double>::denorm_min();
  CHECK_THROWS_AS(decay_rate_fit(t, z, 0.5), Error);
  // values before the window are not inspected
  z = v;
  z.front() = 0.0;
  CHECK_NOTHROW(decay_rate_fit(t, z, 0.5));
}

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "diagnostics.hpp"
#include "doctest.h"
#include "error.hpp"
#include "stationary_analysis.hpp"
#include "support.hpp"

using namespace nlcflow;

namespace {

SimState make_state(const GridSpec& g, double rho, const MacVelocity& v, const DirectorField& d, double t) {
  SimState s;
  s.density = DensityState::initial(ScalarField::sample(g, [=](double, double) { return rho; }));
  s.velocity = v;
  s.pressure = ScalarField(g);
  s.director = d;
  s.t = t;
  return s;
}

DirectorField uniform(const GridSpec& g, double a, double b) {
  return DirectorField::sample(g, [=](double, double) { return a; }, [=](double, double) { return b; });
}

DiagRecord sample_record(double seed) {
  DiagRecord r;
  double x = seed;
  for (double* p : {&r.t, &r.kinetic, &r.elastic, &r.potential, &r.E_total, &r.E_tilde, &r.grad_v_L2,
                    &r.gl_res_L2, &r.A_val, &r.B_val, &r.mass, &r.rho_min, &r.rho_max, &r.d_maxnorm,
                    &r.div_v_inf, &r.law_residual, &r.g_L2, &r.d_dist, &r.v_H1}) {
    x = std::fmod(x * 7.31 + 0.123, 3.0);
    *p = x / 3.0 * std::pow(10.0, -static_cast<int>(x * 5));
  }
  return r;
}

}  // namespace

TEST_CASE("zero state has vanishing dynamic diagnostics") {
  const GridSpec g = GridSpec::make(16, 16, 1.0, 1.0);
  const DirectorField trace = DirectorField::sample(
      g, [](double x, double y) { return std::cos(x - y); }, [](double x, double y) { return std::sin(x - y); });
  const StationaryResult st = solve_stationary(trace, 0.5);
  const ModelParams p;
  const SimState a = make_state(g, 1.3, MacVelocity(g), st.d_inf, 0.0);
  const SimState b = make_state(g, 1.3, MacVelocity(g), st.d_inf, 0.01);
  const DiagRecord r = compute_record(a, b, ForcingSpec::none(), p, &st.d_inf);
  CHECK(r.kinetic == 0.0);
  CHECK(r.A_val <= 1e-16);
  CHECK(r.B_val == 0.0);
  CHECK(std::abs(r.law_residual) <= 1e-16);
  CHECK(r.d_dist == 0.0);
  CHECK(r.v_H1 == 0.0);
  CHECK(r.E_total == r.kinetic + r.elastic + r.potential);
  CHECK(energy_law_residual(a, b, ForcingSpec::none(), p) == doctest::Approx(0.0).scale(1.0).epsilon(1e-16));
}

TEST_CASE("uniform off-sphere director") {
  const GridSpec g = GridSpec::make(8, 8, 1.0, 1.0);
  const ModelParams p{1.0, 1.0, 1.0, 1.0};
  const DiagRecord r = initial_record(make_state(g, 1.0, MacVelocity(g), uniform(g, 2.0, 0.0), 0.0),
                                      ForcingSpec::none(), p);
  CHECK(r.gl_res_L2 * r.gl_res_L2 == doctest::Approx(36.0));
  CHECK(r.A_val == doctest::Approx(36.0));
  CHECK(r.potential == doctest::Approx(9.0 / 4.0));
  CHECK(r.elastic == doctest::Approx(0.0).scale(1.0));
  CHECK(r.d_maxnorm == doctest::Approx(2.0));
  CHECK(std::isnan(r.d_dist));
  CHECK(r.mass == doctest::Approx(1.0));
  CHECK(r.rho_min == 1.0);
  CHECK(r.rho_max == 1.0);
}

TEST_CASE("kinetic energy and B_val against cell sums") {
  const GridSpec g = GridSpec::make(6, 5, 1.2, 1.0);
  std::mt19937 rng(6);
  const MacVelocity w = testing::random_velocity(g, rng, 0.5);
  const DirectorField d = uniform(g, 1.0, 0.0);
  const ModelParams p;
  const double dt = 0.25;
  const SimState a = make_state(g, 2.0, MacVelocity(g), d, 1.0);
  const SimState b = make_state(g, 2.0, w, d, 1.0 + dt);
  double sq = 0.0;
  for (double x : w.u.data()) sq += x * x;
  for (double x : w.v.data()) sq += x * x;
  sq *= g.cell_area();
  const DiagRecord r = compute_record(a, b, ForcingSpec::none(), p);
  CHECK(r.kinetic == doctest::Approx(0.5 * 2.0 * sq));
  CHECK(r.B_val == doctest::Approx(2.0 * sq / (dt * dt)));
  CHECK(r.v_H1 >= std::sqrt(sq) * (1.0 - 1e-12));
  CHECK_THROWS_AS(compute_record(b, a, ForcingSpec::none(), p), Error);
}

TEST_CASE("potential energy term and force norm") {
  const GridSpec g = GridSpec::make(8, 8, 1.0, 1.0);
  const ForcingSpec f{PotentialForce{Expression::parse("-y")}};
  const DiagRecord r = initial_record(make_state(g, 1.5, MacVelocity(g), uniform(g, 1.0, 0.0), 0.0), f, ModelParams{});
  // int rho phi = -1.5 * 1/2
  CHECK(r.E_tilde == doctest::Approx(r.E_total + 0.75));
  CHECK(r.g_L2 > 0.9);
  CHECK(r.g_L2 <= 1.0);
}

TEST_CASE("decaying-force law residual is an excess") {
  const GridSpec g = GridSpec::make(8, 8, 1.0, 1.0);
  const ForcingSpec f{DecayingForce{Expression::parse("sin(pi*x)^2*sin(2*pi*y)"),
                                    Expression::parse("-sin(2*pi*x)*sin(pi*y)^2"), 1.0, 5.0}};
  const SimState a = make_state(g, 1.0, MacVelocity(g), uniform(g, 1.0, 0.0), 0.0);
  const SimState b = make_state(g, 1.0, MacVelocity(g), uniform(g, 1.0, 0.0), 0.01);
  CHECK(energy_law_residual(a, b, f, ModelParams{}) == 0.0);
  std::mt19937 rng(1);
  const SimState c = make_state(g, 1.0, testing::random_velocity(g, rng, 1.0), uniform(g, 1.0, 0.0), 0.02);
  CHECK(energy_law_residual(b, c, f, ModelParams{}) > 0.0);
}

TEST_CASE("convergence monitor") {
  std::vector<DiagRecord> eq(12);
  for (std::size_t k = 0; k < eq.size(); ++k) eq[k].t = static_cast<double>(k);
  const ConvergenceSummary z = convergence_monitor(eq);
  for (const auto& s : z.series) {
    CHECK(s.trivial);
    CHECK(s.ratio_to_initial == 0.0);
  }
  CHECK(z.monotone_tail);

  std::vector<DiagRecord> dec(40);
  for (std::size_t k = 0; k < dec.size(); ++k) {
    const double t = static_cast<double>(k);
    dec[k].t = t;
    dec[k].v_H1 = std::exp(-t);
    dec[k].gl_res_L2 = 1.0 / (1.0 + t);
    dec[k].B_val = k == 0 ? 0.0 : 2.0 / (1.0 + t);
    dec[k].d_dist = 0.5 / (1.0 + t * t);
  }
  const ConvergenceSummary c = convergence_monitor(dec);
  CHECK(c.get("v_H1").ratio_to_initial == doctest::Approx(std::exp(-39.0)));
  CHECK(c.get("gl_res_L2").ratio_to_initial == doctest::Approx(1.0 / 40.0));
  CHECK(c.get("B_val").initial == doctest::Approx(1.0));
  CHECK(c.get("B_val").ratio_to_initial == doctest::Approx(2.0 / 40.0));
  CHECK(c.get("d_dist").max == doctest::Approx(0.5));
  CHECK(c.monotone_tail);

  dec.back().d_dist = 1.0;
  const ConvergenceSummary bump = convergence_monitor(dec);
  CHECK_FALSE(bump.get("d_dist").monotone_tail);
  CHECK_FALSE(bump.monotone_tail);
  CHECK_THROWS_AS(c.get("nope"), Error);
  CHECK_THROWS_AS(convergence_monitor(std::vector<DiagRecord>(9)), Error);
}

TEST_CASE("CSV header and round trip") {
  std::ostringstream os;
  write_csv_header(os);
  CHECK(os.str() ==
        "t,kinetic,elastic,potential,E_total,E_tilde,grad_v_L2,gl_res_L2,A_val,B_val,mass,rho_min,rho_max,"
        "d_maxnorm,div_v_inf,law_residual,g_L2,d_dist,v_H1\n");
  CHECK(diag_field_names().size() == 19);
  std::vector<DiagRecord> rows;
  for (int k = 0; k < 5; ++k) rows.push_back(sample_record(0.1 + k));
  rows[2].d_dist = std::numeric_limits<double>::quiet_NaN();
  rows[3].law_residual = -1.0 / 3.0;
  for (const auto& r : rows) write_csv_row(os, r);
  std::istringstream is(os.str());
  const std::vector<DiagRecord> back = read_csv(is);
  REQUIRE(back.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(back[k].t == rows[k].t);
    CHECK(back[k].law_residual == rows[k].law_residual);
    CHECK(back[k].v_H1 == rows[k].v_H1);
    CHECK(back[k].A_val == rows[k].A_val);
  }
  CHECK(std::isnan(back[2].d_dist));

  std::istringstream partial("v_H1,extra,t\n0.5,9,2\n");
  const auto p = read_csv(partial);
  REQUIRE(p.size() == 1);
  CHECK(p[0].v_H1 == 0.5);
  CHECK(p[0].t == 2.0);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), Error);
}

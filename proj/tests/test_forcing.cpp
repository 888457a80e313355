#include <cmath>
#include <functional>
#include <string>

#include "doctest.h"
#include "error.hpp"
#include "expression.hpp"
#include "forcing.hpp"
#include "momentum_solver.hpp"
#include "operators.hpp"

using namespace nlcflow;

namespace {

const double kPi = std::acos(-1.0);

ForcingSpec decaying(double xi, double amplitude) {
  return ForcingSpec{DecayingForce{Expression::parse("sin(pi*x)^2*sin(2*pi*y)"),
                                   Expression::parse("-sin(2*pi*x)*sin(pi*y)^2"), xi, amplitude}};
}

double g_sq(const ForcingSpec& f, const GridSpec& g, double t) {
  const MacVelocity a = eval_force(f, g, t);
  return inner(a, a);
}

// Composite Simpson rule in s = log(1 + t), which flattens the algebraic decay.
double log_simpson(const std::function<double(double)>& fn, double t0, double t1, int n) {
  const double s0 = std::log1p(t0), s1 = std::log1p(t1), h = (s1 - s0) / n;
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double s = s0 + k * h;
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * fn(std::expm1(s)) * std::exp(s);
  }
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("expression grammar") {
  auto ev = [](const std::string& s, double x = 0.3, double y = -0.7) { return Expression::parse(s)(x, y); };
  CHECK(ev("1 + 2 * 3") == 7.0);
  CHECK(ev("(1 + 2) * 3") == 9.0);
  CHECK(ev("8 / 4 / 2") == 1.0);
  CHECK(ev("2 - 3 - 4") == -5.0);
  CHECK(ev("-2^2") == -4.0);
  CHECK(ev("2^3^2") == 512.0);
  CHECK(ev("2^-1") == 0.5);
  CHECK(ev("x*y") == doctest::Approx(-0.21));
  CHECK(ev("pi") == doctest::Approx(kPi));
  CHECK(ev("1.5e-3") == doctest::Approx(1.5e-3));
  CHECK(ev("sin(x) + cos(y) - exp(x*y) + tanh(x) * sqrt(4)") ==
        doctest::Approx(std::sin(0.3) + std::cos(-0.7) - std::exp(-0.21) + std::tanh(0.3) * 2.0));
  CHECK(ev("  - - x ") == doctest::Approx(0.3));
  CHECK(Expression()(1.0, 2.0) == 0.0);
  CHECK(Expression::constant(4.5)(1.0, 2.0) == 4.5);
  CHECK(Expression::parse("x + 1").source() == "x + 1");
  for (const char* bad : {"", "1 +", "sin x", "(x", "x)", "foo(x)", "z", "1..2", "2 3", "sin()"})
    CHECK_THROWS_AS(Expression::parse(bad), Error);
}

TEST_CASE("constant potential gives no force") {
  const GridSpec g = GridSpec::make(8, 8, 1.0, 1.0);
  const ForcingSpec f{PotentialForce{Expression::parse("3.5")}};
  CHECK(norm(eval_force(f, g, 0.0), NormKind::kLinf) == 0.0);
  CHECK(norm(eval_force(ForcingSpec::none(), g, 2.0), NormKind::kLinf) == 0.0);
}

TEST_CASE("potential force is a discrete gradient removed by projection") {
  const GridSpec g = GridSpec::make(16, 16, 1.0, 1.0);
  const ForcingSpec f{PotentialForce{Expression::parse("-y + 0.3*sin(2*x)*cos(y)")}};
  const MacVelocity a0 = eval_force(f, g, 0.0);
  const MacVelocity a1 = eval_force(f, g, 7.0);
  CHECK(a0.u == a1.u);
  CHECK(a0.v == a1.v);
  const auto rho = ScalarField::sample(g, [](double, double) { return 1.0; });
  FlowParams flow;
  const double dt = 0.01;
  const MacVelocity vs = axpby(dt, a0, 0.0, a0);
  const Projection p = project(rho, vs, dt, flow);
  CHECK(norm(p.velocity, NormKind::kLinf) <= 10 * flow.tol_proj);
}

TEST_CASE("decaying force at t = 0 is the sampled profile") {
  const GridSpec g = GridSpec::make(10, 8, 1.0, 1.0);
  const ForcingSpec f = decaying(1.0, 1.0);
  const MacVelocity a = eval_force(f, g, 0.0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i)
      CHECK(a.u(i, j) == std::pow(std::sin(kPi * g.xf(i)), 2) * std::sin(2 * kPi * g.yc(j)));
  for (int i = 0; i < g.nx; ++i) CHECK(a.v(i, 0) == 0.0);
  CHECK_THROWS_AS(eval_force(f, g, -1.0), Error);
}

TEST_CASE("decaying force follows the prescribed power law") {
  const GridSpec g = GridSpec::make(12, 12, 1.0, 1.0);
  for (double xi : {0.5, 1.0, 2.0}) {
    const ForcingSpec f = decaying(xi, 1.7);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = 40;
    for (int k = 0; k < n; ++k) {
      const double t = std::exp(std::log(1.0) + k * (std::log(100.0) - std::log(1.0)) / (n - 1));
      const double x = std::log1p(t), y = std::log(g_sq(f, g, t));
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-(2.0 + xi)).epsilon(0.01));
  }
}

TEST_CASE("tail energy closed form") {
  const GridSpec g = GridSpec::make(16, 16, 1.0, 1.0);
  const ForcingSpec f = decaying(1.0, 1.0);
  const double a2 = profile_norm_squared(std::get<DecayingForce>(f.variant), g);
  CHECK(a2 > 0.0);
  CHECK(tail_energy(f, g, 0.0) == doctest::Approx(0.5 * a2));

  // the supremum in the tail condition is attained at every t
  for (double t : {0.0, 1.0, 10.0, 1e3})
    CHECK(std::pow(1.0 + t, 2.0) * tail_energy(f, g, t) == doctest::Approx(a2 / 2.0));

  const double numeric = log_simpson([&](double t) { return g_sq(f, g, t); }, 1.0, 1.0 + 1e4, 400);
  CHECK(std::abs(numeric - tail_energy(f, g, 1.0)) <= 1e-3 * tail_energy(f, g, 1.0));

  try {
    tail_energy(ForcingSpec::none(), g, 0.0);
    FAIL("expected NotApplicable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotApplicable);
  }
}

TEST_CASE("decaying force has a square-integrable time derivative") {
  const GridSpec g = GridSpec::make(12, 12, 1.0, 1.0);
  const double xi = 1.0, amp = 1.3;
  const ForcingSpec f = decaying(xi, amp);
  const double a2 = profile_norm_squared(std::get<DecayingForce>(f.variant), g);
  auto gt_sq = [&](double t) {
    const double h = 1e-5 * (1.0 + t);
    const MacVelocity d = axpby(0.5 / h, eval_force(f, g, t + h), -0.5 / h, eval_force(f, g, t > h ? t - h : 0.0));
    return inner(d, d);
  };
  const double numeric = log_simpson(gt_sq, 0.1, 1e4, 400);
  // int_{t0}^inf ||g_t||^2 = a2 amp^2 ((2+xi)/2)^2 (1+t0)^{-(3+xi)} / (3+xi)
  const double exact = a2 * amp * amp * std::pow((2.0 + xi) / 2.0, 2) * std::pow(1.1, -(3.0 + xi)) / (3.0 + xi);
  CHECK(numeric == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("forcing validation") {
  CHECK_THROWS_AS(decaying(0.0, 1.0).validate(), Error);
  CHECK_THROWS_AS(decaying(-1.0, 1.0).validate(), Error);
  CHECK_NOTHROW(decaying(0.1, 1.0).validate());
  CHECK_NOTHROW(ForcingSpec::none().validate());
}

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "fields.hpp"
#include "operators.hpp"
#include "support.hpp"

using namespace nlcflow;
using testing::max_abs;
using testing::max_abs_diff;
using testing::random_scalar;
using testing::random_velocity;

TEST_CASE("grid geometry is derived from counts and sides") {
  const GridSpec g = GridSpec::make(8, 4, 2.0, 1.0);
  CHECK(g.hx() == doctest::Approx(0.25));
  CHECK(g.hy() == doctest::Approx(0.25));
  CHECK(g.cell_area() == doctest::Approx(0.0625));
  CHECK(g.xc(0) == doctest::Approx(0.125));
  CHECK(g.yf(4) == doctest::Approx(1.0));
  CHECK_THROWS_AS(GridSpec::make(3, 8, 1.0, 1.0), Error);
  CHECK_THROWS_AS(GridSpec::make(8, 8, 0.0, 1.0), Error);
}

TEST_CASE("ghost rules") {
  const GridSpec g = GridSpec::make(4, 4, 1.0, 1.0);
  std::mt19937 rng(1);
  ScalarField n = random_scalar(g, rng);
  CHECK(n.at(-1, 2) == n(0, 2));
  CHECK(n.at(4, 1) == n(3, 1));
  ScalarField e = n;
  e.kind = BoundaryKind::kExtrapolate;
  CHECK(e.at(1, -1) == doctest::Approx(2.0 * e(1, 0) - e(1, 1)));
  const ScalarField d = ScalarField::dirichlet(g, [](double x, double y) { return x + 2.0 * y; });
  // the ghost value is the linear extrapolation through the boundary midpoint
  CHECK(0.5 * (d.at(-1, 1) + d(0, 1)) == doctest::Approx(0.0 + 2.0 * g.yc(1)));
  CHECK(0.5 * (d.at(2, 4) + d(2, 3)) == doctest::Approx(g.xc(2) + 2.0));
  const MacVelocity w = random_velocity(g, rng);
  CHECK(w.u_at(2, -1) == -w.u(2, 0));
  CHECK(w.v_at(4, 2) == -w.v(3, 2));
}

TEST_CASE("divergence") {
  SUBCASE("uniform u away from the walls") {
    const GridSpec g = GridSpec::make(8, 8, 1.0, 1.0);
    MacVelocity w(g);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 1; i < g.nx; ++i) w.u(i, j) = 2.5;
    const ScalarField div = divergence(w);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 1; i < g.nx - 1; ++i) CHECK(div(i, j) == 0.0);
  }
  SUBCASE("u = x, v = -y cancels exactly") {
    const GridSpec g = GridSpec::make(6, 5, 1.5, 1.0);
    const MacVelocity w = MacVelocity::sample(g, [](double x, double) { return x; },
                                              [](double, double y) { return -y; });
    MacVelocity full = w;
    for (int j = 0; j < g.ny; ++j) full.u(g.nx, j) = g.lx;
    for (int i = 0; i < g.nx; ++i) full.v(i, g.ny) = -g.ly;
    const ScalarField div = divergence(full);
    for (double x : div.values.data()) CHECK(std::abs(x) < 1e-12);
  }
  SUBCASE("random 4x4 against an index-by-index oracle") {
    const GridSpec g = GridSpec::make(4, 4, 1.0, 0.8);
    std::mt19937 rng(7);
    const MacVelocity w = random_velocity(g, rng);
    const ScalarField div = divergence(w);
    const double hx = 0.25, hy = 0.2;
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) {
        const double right = w.u.data()[j * 5 + i + 1], left = w.u.data()[j * 5 + i];
        const double top = w.v.data()[(j + 1) * 4 + i], bottom = w.v.data()[j * 4 + i];
        CHECK(div(i, j) == doctest::Approx((right - left) / hx + (top - bottom) / hy).epsilon(1e-14));
      }
  }
}

TEST_CASE("gradient_to_faces") {
  const GridSpec g = GridSpec::make(6, 6, 1.0, 1.0);
  SUBCASE("constant") {
    const ScalarField p = ScalarField::sample(g, [](double, double) { return 3.0; });
    const MacVelocity gr = gradient_to_faces(p);
    CHECK(max_abs(gr.u.data()) == 0.0);
    CHECK(max_abs(gr.v.data()) == 0.0);
  }
  SUBCASE("p = x") {
    const ScalarField p = ScalarField::sample(g, [](double x, double) { return x; });
    const MacVelocity gr = gradient_to_faces(p);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 1; i < g.nx; ++i) CHECK(gr.u(i, j) == doctest::Approx(1.0));
    for (int j = 1; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) CHECK(gr.v(i, j) == 0.0);
  }
  SUBCASE("duality with divergence on a random 5x5 instance") {
    const GridSpec g5 = GridSpec::make(5, 5, 1.0, 1.3);
    std::mt19937 rng(11);
    const MacVelocity w = random_velocity(g5, rng);
    const ScalarField p = random_scalar(g5, rng);
    const ScalarField div = divergence(w);
    const MacVelocity gr = gradient_to_faces(p);
    // brute-force inner products with cell-area weights on interior faces
    double lhs = 0.0, rhs = 0.0;
    for (int j = 0; j < 5; ++j)
      for (int i = 0; i < 5; ++i) lhs += div(i, j) * p(i, j) * g5.cell_area();
    for (int j = 0; j < 5; ++j)
      for (int i = 1; i < 5; ++i) rhs += w.u(i, j) * gr.u(i, j) * g5.cell_area();
    for (int j = 1; j < 5; ++j)
      for (int i = 0; i < 5; ++i) rhs += w.v(i, j) * gr.v(i, j) * g5.cell_area();
    CHECK(lhs == doctest::Approx(-rhs).epsilon(1e-13));
    CHECK(inner(div, p) == doctest::Approx(-inner(w, gr)).epsilon(1e-13));
  }
}

TEST_CASE("laplacian") {
  const GridSpec g = GridSpec::make(8, 8, 1.0, 1.0);
  SUBCASE("linear field vanishes in the interior") {
    const ScalarField s = ScalarField::dirichlet(g, [](double x, double y) { return 2.0 * x - y + 1.0; });
    const ScalarField lap = laplacian(s);
    for (double x : lap.values.data()) CHECK(std::abs(x) < 1e-10);
  }
  SUBCASE("x^2 gives 2 away from the boundary") {
    const ScalarField s = ScalarField::sample(g, [](double x, double) { return x * x; });
    const ScalarField lap = laplacian(s);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 1; i < g.nx - 1; ++i) CHECK(lap(i, j) == doctest::Approx(2.0));
  }
  SUBCASE("equals divergence of the face gradient bitwise") {
    std::mt19937 rng(3);
    for (BoundaryKind kind : {BoundaryKind::kNeumannZero, BoundaryKind::kExtrapolate}) {
      const ScalarField s = random_scalar(g, rng, -1.0, 1.0, kind);
      CHECK(laplacian(s).values == divergence(gradient_to_faces(s)).values);
    }
    const ScalarField d = ScalarField::dirichlet(g, [](double x, double y) { return std::sin(x + y); });
    CHECK(laplacian(d).values == divergence(gradient_to_faces(d)).values);
  }
  SUBCASE("second order on a sine mode") {
    auto error = [](int n) {
      const GridSpec gg = GridSpec::make(n, n, 1.0, 2.0);
      const double kx = std::numbers::pi, ky = std::numbers::pi / 2.0;
      const ScalarField s =
          ScalarField::dirichlet(gg, [&](double x, double y) { return std::sin(kx * x) * std::sin(ky * y); });
      const ScalarField lap = laplacian(s);
      double num = 0.0, den = 0.0;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const double ex = -(kx * kx + ky * ky) * s(i, j);
          num += (lap(i, j) - ex) * (lap(i, j) - ex);
          den += ex * ex;
        }
      return std::sqrt(num / den);
    };
    const double order = std::log2(error(32) / error(64));
    CHECK(order == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("operators are linear") {
  const GridSpec g = GridSpec::make(7, 6, 1.0, 1.0);
  std::mt19937 rng(5);
  const double a = 0.7, b = -1.9;
  const ScalarField f = random_scalar(g, rng), h = random_scalar(g, rng);
  const ScalarField comb = axpby(a, f, b, h);
  const auto combine = [&](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> r(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) r[k] = a * x[k] + b * y[k];
    return r;
  };
  CHECK(max_abs_diff(laplacian(comb).values.data(),
                     combine(laplacian(f).values.data(), laplacian(h).values.data())) < 1e-11);
  CHECK(max_abs_diff(gradient_to_faces(comb).u.data(),
                     combine(gradient_to_faces(f).u.data(), gradient_to_faces(h).u.data())) < 1e-12);
  const MacVelocity w1 = random_velocity(g, rng), w2 = random_velocity(g, rng);
  CHECK(max_abs_diff(divergence(axpby(a, w1, b, w2)).values.data(),
                     combine(divergence(w1).values.data(), divergence(w2).values.data())) < 1e-12);
}

TEST_CASE("norms") {
  const GridSpec g = GridSpec::make(8, 8, 1.0, 1.0);
  const ScalarField one = ScalarField::sample(g, [](double, double) { return 1.0; });
  CHECK(norm(one, NormKind::kL2) == doctest::Approx(1.0));
  CHECK(norm(one, NormKind::kLinf) == 1.0);
  CHECK(norm(one, NormKind::kH1Semi) == 0.0);
  const GridSpec r = GridSpec::make(8, 4, 2.0, 1.5);
  const ScalarField one_r = ScalarField::sample(r, [](double, double) { return 1.0; });
  CHECK(norm(one_r, NormKind::kL1) == doctest::Approx(3.0));
  // H1 seminorm of a linear Dirichlet field is its slope times sqrt(area)
  const ScalarField lin = ScalarField::dirichlet(g, [](double x, double) { return 3.0 * x; });
  CHECK(norm(lin, NormKind::kH1Semi) == doctest::Approx(3.0));
  // -<Laplacian s, s> equals the H1 seminorm squared for homogeneous Dirichlet data
  std::mt19937 rng(2);
  ScalarField s = ScalarField::dirichlet(g, [](double, double) { return 0.0; });
  s.values = random_scalar(g, rng).values;
  const double h1 = norm(s, NormKind::kH1Semi);
  CHECK(-inner(laplacian(s), s) == doctest::Approx(h1 * h1).epsilon(1e-12));
}

TEST_CASE("elastic identity residual") {
  SUBCASE("constant director") {
    const GridSpec g = GridSpec::make(10, 10, 1.0, 1.0);
    const DirectorField d = DirectorField::sample(g, [](double, double) { return 0.6; },
                                                  [](double, double) { return 0.8; });
    CHECK(elastic_identity_residual(d) == 0.0);
  }
  SUBCASE("linear in x") {
    const GridSpec g = GridSpec::make(10, 10, 1.0, 1.0);
    const DirectorField d = DirectorField::sample(g, [](double x, double) { return 0.5 * x; },
                                                  [](double x, double) { return 1.0 - 0.3 * x; });
    CHECK(elastic_identity_residual(d) < 1e-12);
  }
  SUBCASE("at least first order under refinement") {
    auto res = [](int n) {
      const GridSpec g = GridSpec::make(n, n, 1.0, 1.0);
      const DirectorField d = DirectorField::sample(g, [](double x, double) { return std::sin(x); },
                                                    [](double, double y) { return std::cos(y); });
      return elastic_identity_residual(d);
    };
    const double r16 = res(16), r32 = res(32), r64 = res(64);
    CHECK(std::log2(r16 / r32) >= 1.0);
    CHECK(std::log2(r32 / r64) >= 1.0);
  }
}

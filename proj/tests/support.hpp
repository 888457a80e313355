#pragma once

#include <cmath>
#include <random>

#include "fields.hpp"

namespace testing {

using nlcflow::BoundaryKind;
using nlcflow::DirectorField;
using nlcflow::GridSpec;
using nlcflow::MacVelocity;
using nlcflow::ScalarField;

inline ScalarField random_scalar(const GridSpec& g, std::mt19937& rng, double lo = -1.0, double hi = 1.0,
                                 BoundaryKind kind = BoundaryKind::kNeumannZero) {
  std::uniform_real_distribution<double> u(lo, hi);
  ScalarField s(g, kind);
  for (double& x : s.values.data()) x = u(rng);
  return s;
}

// Random interior faces; boundary normal components stay zero.
inline MacVelocity random_velocity(const GridSpec& g, std::mt19937& rng, double amp = 1.0) {
  std::uniform_real_distribution<double> u(-amp, amp);
  MacVelocity w(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) w.u(i, j) = u(rng);
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) w.v(i, j) = u(rng);
  return w;
}

// Unit-length trace with a smoothly varying angle and an interior perturbed at random
// while keeping |d| <= 1.
inline DirectorField random_director(const GridSpec& g, std::mt19937& rng, double spread = 0.5) {
  auto angle = [](double x, double y) { return 0.7 * x - 0.4 * y + 0.3 * std::sin(3.0 * x * y); };
  DirectorField d = DirectorField::sample(
      g, [&](double x, double y) { return std::cos(angle(x, y)); },
      [&](double x, double y) { return std::sin(angle(x, y)); });
  std::uniform_real_distribution<double> u(-spread, spread), m(0.5, 1.0);
  for (std::size_t n = 0; n < d.d1.values.size(); ++n) {
    const double a = std::atan2(d.d2.values.data()[n], d.d1.values.data()[n]) + u(rng);
    const double r = m(rng);
    d.d1.values.data()[n] = r * std::cos(a);
    d.d2.values.data()[n] = r * std::sin(a);
  }
  return d;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace testing

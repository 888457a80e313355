#pragma once

#include <variant>

#include "expression.hpp"
#include "fields.hpp"

namespace nlcflow {

/// Time-independent potential force g = grad(phi).
struct PotentialForce {
  Expression phi;
};

/// Asymptotically autonomous force g = amplitude * a(x) * (1+t)^{-(2+xi)/2}.
struct DecayingForce {
  Expression a1;
  Expression a2;
  double xi = 1.0;
  double amplitude = 1.0;
};

struct ForcingSpec {
  std::variant<PotentialForce, DecayingForce> variant;

  static ForcingSpec none() { return ForcingSpec{PotentialForce{Expression()}}; }
  bool is_potential() const { return std::holds_alternative<PotentialForce>(variant); }
  void validate() const;
};

/// phi sampled at cell centers (zero for the decaying family).
ScalarField potential_field(const ForcingSpec& spec, const GridSpec& grid);

/// The body acceleration at time t on faces; normal boundary components are zero.
MacVelocity eval_force(const ForcingSpec& spec, const GridSpec& grid, double t);

/// ||a||^2 by face quadrature of the sampled profile (decaying family only).
double profile_norm_squared(const DecayingForce& force, const GridSpec& grid);

/// z(t) = int_t^inf ||g||^2 in closed form. Throws Error(kNotApplicable) for a potential force.
double tail_energy(const ForcingSpec& spec, const GridSpec& grid, double t);

}  // namespace nlcflow

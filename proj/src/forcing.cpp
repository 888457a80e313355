#include "forcing.hpp"

#include <cmath>

#include "error.hpp"
#include "operators.hpp"

namespace nlcflow {

void ForcingSpec::validate() const {
  if (const auto* f = std::get_if<DecayingForce>(&variant)) {
    if (!(f->xi > 0.0)) throw Error(ErrorCode::kConfigError, "decaying force needs xi > 0");
    if (!std::isfinite(f->amplitude))
      throw Error(ErrorCode::kConfigError, "force amplitude must be finite");
  }
}

ScalarField potential_field(const ForcingSpec& spec, const GridSpec& grid) {
  if (const auto* f = std::get_if<PotentialForce>(&spec.variant))
    return ScalarField::sample(grid, f->phi, BoundaryKind::kExtrapolate);
  return ScalarField(grid, BoundaryKind::kExtrapolate);
}

namespace {

MacVelocity sample_profile(const DecayingForce& f, const GridSpec& grid) {
  return MacVelocity::sample(grid, f.a1, f.a2);
}

}  // namespace

MacVelocity eval_force(const ForcingSpec& spec, const GridSpec& grid, double t) {
  if (t < 0.0) throw Error(ErrorCode::kInvalidArgument, "force evaluated at negative time");
  if (spec.is_potential()) {
    MacVelocity g = gradient_to_faces(potential_field(spec, grid));
    g.zero_normal_boundary();
    return g;
  }
  const auto& f = std::get<DecayingForce>(spec.variant);
  MacVelocity g = sample_profile(f, grid);
  const double factor = f.amplitude * std::pow(1.0 + t, -(2.0 + f.xi) / 2.0);
  for (double& x : g.u.data()) x *= factor;
  for (double& x : g.v.data()) x *= factor;
  return g;
}

double profile_norm_squared(const DecayingForce& force, const GridSpec& grid) {
  const MacVelocity a = sample_profile(force, grid);
  return inner(a, a);
}

double tail_energy(const ForcingSpec& spec, const GridSpec& grid, double t) {
  const auto* f = std::get_if<DecayingForce>(&spec.variant);
  if (!f) throw Error(ErrorCode::kNotApplicable, "a time-independent potential force has no finite tail");
  const double a2 = profile_norm_squared(*f, grid);
  return a2 * f->amplitude * f->amplitude * std::pow(1.0 + t, -(1.0 + f->xi)) / (1.0 + f->xi);
}

}  // namespace nlcflow

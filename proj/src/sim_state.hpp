#pragma once

#include "density_transport.hpp"
#include "fields.hpp"

namespace nlcflow {

/// Full solution snapshot (rho, v, P, d) at time t.
struct SimState {
  DensityState density;
  MacVelocity velocity;
  ScalarField pressure;
  DirectorField director;
  double t = 0.0;
  double dt = 0.0;  // step size used to reach this state (0 for the initial state)
  long step = 0;
};

}  // namespace nlcflow

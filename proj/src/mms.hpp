#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace nlcflow {

/// Error of one discrete quantity on a sequence of doubled resolutions.
struct OrderStudy {
  std::string quantity;
  std::vector<int> resolutions;  // nx of each level
  std::vector<double> errors;
  std::vector<double> orders;    // log2(e_k / e_{k+1})
  double expected = 0.0;         // expected order, or 0 for a tolerance study
  double limit = 0.0;            // tolerance studies: bound on every error
  bool passed = false;
};

struct MmsTable {
  std::vector<OrderStudy> studies;
  bool passed = false;

  const OrderStudy& get(const std::string& quantity) const;
};

/// Refinement studies on the configured rectangle, starting at (nx, ny) and doubling
/// mms_levels - 1 times:
///   laplacian         relative L2 error against the analytic Laplacian of a sine mode
///   density_upwind    relative L2 error of the transport step with a manufactured source
///   projection        max-norm divergence after projecting a non-solenoidal field
///   elastic_identity  elastic_identity_residual of d = (sin x, cos y)
/// An order study passes when the finest observed order is at least expected - 0.3.
MmsTable mms_table(const RunConfig& cfg);

/// mms_table, throwing Error(kOrderRegression) when any study fails.
MmsTable mms_verify(const RunConfig& cfg);

}  // namespace nlcflow

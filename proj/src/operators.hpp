#pragma once

#include "fields.hpp"

namespace nlcflow {

/// Cell-centered divergence (u_{i+1,j}-u_{i,j})/hx + (v_{i,j+1}-v_{i,j})/hy.
ScalarField divergence(const MacVelocity& w);

/// Face-centered differences of a cell scalar. Boundary faces use the ghost rule of `p`,
/// so a zero-Neumann scalar yields zero normal boundary components.
MacVelocity gradient_to_faces(const ScalarField& p);

/// Five-point Laplacian, evaluated as divergence(gradient_to_faces(s)).
ScalarField laplacian(const ScalarField& s);

enum class NormKind { kL1, kL2, kLinf, kH1Semi };

// Midpoint quadrature. Boundary faces carry half a dual cell of weight.
double norm(const ScalarField& s, NormKind kind);
double norm(const MacVelocity& w, NormKind kind);
double norm(const DirectorField& d, NormKind kind);

double inner(const ScalarField& a, const ScalarField& b);
double inner(const MacVelocity& a, const MacVelocity& b);

/// Centered differences at cell centers, ghost layer included.
struct CellGradient {
  Array2D dx;
  Array2D dy;
};
CellGradient cell_gradient(const ScalarField& s);

/// Face velocities averaged to cell centers.
struct CellVelocity {
  Array2D u;
  Array2D v;
};
CellVelocity cell_velocity(const MacVelocity& w);

/// Average a cell-centered vector field onto interior faces; boundary faces are zero.
MacVelocity cells_to_faces(const GridSpec& g, const Array2D& cx, const Array2D& cy);

/// Max-norm of div(grad d (.) grad d) - (1/2) grad|grad d|^2 - (Laplacian d) . grad d over
/// cells at least two cells away from the boundary, built from centered differences.
double elastic_identity_residual(const DirectorField& d);

}  // namespace nlcflow

#pragma once

// Spectral differential operators on the torus: the scaled Poisson solve,
// gradient, Biot-Savart, dealiasing, and the weak-convergence metrics
// (H^-1 norm, low-mode pairing gap).

#include "qnlab/fft.hpp"
#include "qnlab/grid.hpp"

namespace qnlab {

/// Solves -eps * Laplacian(phi) = rhs with zero-mean phi.
/// Requires |mean(rhs)| <= 1e-10 and eps > 0.
ScalarField poisson_neg(const ScalarField& rhs, double eps);

/// Spectral gradient; Nyquist-row/column derivatives are set to zero.
VectorField gradient(const ScalarField& f);

/// Velocity from vorticity: u = (grad psi)^perp with Laplacian(psi) = omega
/// and v^perp = (-v2, v1). Requires |mean(omega)| <= 1e-10.
VectorField biot_savart(const ScalarField& omega);

/// Scalar curl of a velocity field: d1 u2 - d2 u1.
ScalarField curl(const VectorField& u);

/// Spectral divergence d1 u1 + d2 u2.
ScalarField divergence(const VectorField& u);

/// sqrt( sum_{k != 0} |<f, e_k>|^2 / (4 pi^2 |k|^2) ).
double h_minus1_norm(const ScalarField& f);

/// max over integer modes |k|_inf <= kmax of |<f, e^{2 pi i k.x}>|.
/// Requires kmax <= n/3.
double weak_gap(const ScalarField& f, int kmax);

/// Zero all modes with |k1| > n/3 or |k2| > n/3 (2/3 rule), in place.
void dealias(Spectrum& s, int n);
ScalarField dealias(const ScalarField& f);

}  // namespace qnlab

#pragma once

// Pseudo-spectral 2D incompressible Euler in vorticity form,
// d omega/dt + div(omega u) = 0, with 2/3-rule dealiasing and four-stage
// Runge-Kutta time stepping. Supplies the velocity, rate-of-strain tensor,
// and material acceleration consumed by the modulated-energy diagnostics.

#include <vector>

#include "qnlab/grid.hpp"
#include "qnlab/report.hpp"
#include "qnlab/spectral.hpp"

namespace qnlab {

struct EulerState {
  ScalarField omega;  // zero-mean vorticity
  double time = 0.0;
  VectorField u;  // cached biot_savart(omega)
};

/// Build a state from vorticity (dealiased, mean checked <= 1e-12 after
/// spectral truncation).
EulerState make_euler_state(const ScalarField& omega0);

/// One RK4 step; throws ConfigError if dt > h / (2 max|u|) (advective CFL).
EulerState step_euler(const EulerState& s, double dt);

/// Rate of strain d(u) = (grad u + grad u^T) / 2.
TensorField strain(const VectorField& u);

/// Material acceleration A(u) = du/dt + u.grad u = -grad p with
/// Laplacian(p) = -sum_ij di(u_j) dj(u_i), p zero-mean.
VectorField material_accel(const EulerState& s);

/// Grid L^p norm; p in {1, 2, 4, inf}.
double lp_norm(const ScalarField& f, double p);

/// sup_t max|u| against the frozen multiple of |omega_0|_inf.
NormReport yudovich_velocity_bound_check(const std::vector<double>& max_u_series,
                                         double omega0_inf);

}  // namespace qnlab

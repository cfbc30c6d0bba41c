#pragma once

// Particle-in-cell discretization of the scaled Vlasov-Poisson system:
// density rho = 1 - eps * Laplacian(phi), force -grad phi on characteristics,
// kick-drift-kick leapfrog push, and the standard diagnostics (energy,
// velocity moments, maximal velocity displacement).

#include <cstdint>

#include "qnlab/grid.hpp"
#include "qnlab/particles.hpp"
#include "qnlab/spectral.hpp"

namespace qnlab {

struct PicConfig {
  int n = 64;       // grid cells per axis
  int ppc = 16;     // particles per cell (perfect square for stratification)
  double dt = 0.0;  // must satisfy dt <= 0.2 sqrt(eps)
  std::uint64_t seed = 1;
};

struct VlasovState {
  ParticleEnsemble ens;
  TorusGrid grid;
  double time = 0.0;
  double eps = 1.0;
  ScalarField rho;     // deposited density at `time`
  ScalarField phi;     // zero-mean potential at `time`
  VectorField efield;  // -grad phi
};

/// Deposit + solve the field for the current particle positions.
void field_solve(VlasovState& s);

/// Build a synchronized state (fields solved) from an ensemble.
VlasovState make_vlasov_state(ParticleEnsemble ens, const TorusGrid& grid,
                              double eps);

/// One kick-drift-kick step; throws ConfigError if dt > 0.2 sqrt(eps).
VlasovState step(const VlasovState& s, double dt);

/// max_p |xi_p(t) - xi_p(0)|.
double q_star(const VlasovState& s);

struct EnergyScalar {
  double kinetic = 0.0;  // (1/2) sum w |xi|^2
  double field = 0.0;    // (eps/2) h^2 sum |grad phi|^2
  double total = 0.0;
};

EnergyScalar total_energy(const VlasovState& s);

/// M_k = sum_p w_p |xi_p|^k, k in {0,...,6}.
double velocity_moment(const VlasovState& s, int k);

/// L^p norm of |grad phi| = |efield| by grid quadrature (p >= 1).
double field_lp_norm(const VlasovState& s, double p);

}  // namespace qnlab

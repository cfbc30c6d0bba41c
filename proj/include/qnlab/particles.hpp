#pragma once

// Particle ensemble (structure-of-arrays) and cloud-in-cell deposition.
// Deposition and interpolation use the same bilinear kernel, so a particle
// exerts no force on itself and momentum bookkeeping closes exactly.

#include <cstddef>
#include <vector>

#include "qnlab/grid.hpp"

namespace qnlab {

struct ParticleEnsemble {
  std::vector<double> x1, x2;      // positions, wrapped to [-1/2, 1/2)
  std::vector<double> v1, v2;      // velocities
  std::vector<double> w;           // weights, sum 1
  std::vector<double> v1_0, v2_0;  // velocities at t = 0 (kept for Q*)

  std::size_t size() const { return x1.size(); }
  void resize(std::size_t n);

  /// Throws ContractError on length mismatch, unwrapped positions,
  /// negative weights, or |sum w - 1| > 1e-12.
  void validate() const;
};

/// Deposit sum_p w_p * payload_p * W_cic(x - x_p) / h^2 onto grid nodes.
/// payload == nullptr means payload 1 (plain density).
ScalarField deposit(const ParticleEnsemble& ens, const TorusGrid& grid,
                    const double* payload = nullptr);

/// Number density; mean exactly 1 for unit total weight.
ScalarField deposit_density(const ParticleEnsemble& ens, const TorusGrid& grid);

/// Momentum density J = (sum w v1 W, sum w v2 W) / h^2.
VectorField deposit_current(const ParticleEnsemble& ens, const TorusGrid& grid);

/// k-th absolute velocity moment density, k in {0,...,4}; k = 0 is density.
ScalarField deposit_moment(const ParticleEnsemble& ens, const TorusGrid& grid,
                           int k);

}  // namespace qnlab

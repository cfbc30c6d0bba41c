#include "qnlab/particles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qnlab {

void ParticleEnsemble::resize(std::size_t n) {
  x1.resize(n);
  x2.resize(n);
  v1.resize(n);
  v2.resize(n);
  w.resize(n);
  v1_0.resize(n);
  v2_0.resize(n);
}

void ParticleEnsemble::validate() const {
  const std::size_t n = x1.size();
  if (x2.size() != n || v1.size() != n || v2.size() != n || w.size() != n ||
      v1_0.size() != n || v2_0.size() != n)
    throw ContractError("ensemble: array length mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x1[i] >= -0.5 && x1[i] < 0.5 && x2[i] >= -0.5 && x2[i] < 0.5))
      throw ContractError("ensemble: unwrapped position at particle " +
                          std::to_string(i));
    if (!(w[i] >= 0.0))
      throw ContractError("ensemble: negative weight at particle " +
                          std::to_string(i));
  }
  double total = kern::sum(w.data(), n);
  if (std::fabs(total - 1.0) > 1e-12)
    throw ContractError("ensemble: weights sum to " + std::to_string(total));
}

ScalarField deposit(const ParticleEnsemble& ens, const TorusGrid& grid,
                    const double* payload) {
  ScalarField out(grid);
  const int n = grid.n;
  const int mask = n - 1;
  const double nd = static_cast<double>(n);
  const double inv_h2 = nd * nd;
  double* f = out.data();
  for (std::size_t p = 0; p < ens.size(); ++p) {
    double t1 = (ens.x1[p] + 0.5) * nd;
    double t2 = (ens.x2[p] + 0.5) * nd;
    int i1 = std::min(static_cast<int>(t1), mask);
    int i2 = std::min(static_cast<int>(t2), mask);
    double a = t1 - static_cast<double>(i1);
    double b = t2 - static_cast<double>(i2);
    int j1 = (i1 + 1) & mask;
    int j2 = (i2 + 1) & mask;
    double q = ens.w[p] * inv_h2;
    if (payload) q *= payload[p];
    f[i1 * n + i2] += q * ((1.0 - a) * (1.0 - b));
    f[j1 * n + i2] += q * (a * (1.0 - b));
    f[i1 * n + j2] += q * ((1.0 - a) * b);
    f[j1 * n + j2] += q * (a * b);
  }
  return out;
}

ScalarField deposit_density(const ParticleEnsemble& ens, const TorusGrid& grid) {
  return deposit(ens, grid, nullptr);
}

VectorField deposit_current(const ParticleEnsemble& ens, const TorusGrid& grid) {
  return VectorField(deposit(ens, grid, ens.v1.data()),
                     deposit(ens, grid, ens.v2.data()));
}

ScalarField deposit_moment(const ParticleEnsemble& ens, const TorusGrid& grid,
                           int k) {
  if (k < 0 || k > 4)
    throw ConfigError("deposit_moment: k must lie in {0,...,4}");
  if (k == 0) return deposit_density(ens, grid);
  std::vector<double> payload(ens.size());
  for (std::size_t p = 0; p < ens.size(); ++p) {
    double s = std::hypot(ens.v1[p], ens.v2[p]);
    payload[p] = std::pow(s, k);
  }
  return deposit(ens, grid, payload.data());
}

}  // namespace qnlab

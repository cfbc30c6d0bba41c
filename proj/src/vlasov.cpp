#include "qnlab/vlasov.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace qnlab {

void field_solve(VlasovState& s) {
  s.rho = deposit_density(s.ens, s.grid);
  ScalarField rhs = s.rho;
  rhs.shift(-1.0);
  s.phi = poisson_neg(rhs, s.eps);
  VectorField g = gradient(s.phi);
  g.c1 *= -1.0;
  g.c2 *= -1.0;
  s.efield = std::move(g);
}

VlasovState make_vlasov_state(ParticleEnsemble ens, const TorusGrid& grid,
                              double eps) {
  if (!(eps > 0.0)) throw ConfigError("vlasov: eps must be positive");
  ens.validate();
  VlasovState s;
  s.ens = std::move(ens);
  s.grid = grid;
  s.eps = eps;
  field_solve(s);
  return s;
}

VlasovState step(const VlasovState& s, double dt) {
  const double dt_max = 0.2 * std::sqrt(s.eps);
  if (!(dt > 0.0) || dt > dt_max * (1.0 + 1e-12))
    throw ConfigError("vlasov step: dt = " + std::to_string(dt) +
                      " exceeds 0.2 sqrt(eps) = " + std::to_string(dt_max));
  VlasovState out = s;
  const std::size_t np = out.ens.size();
  const int n = out.grid.n;
  std::vector<double> e1(np), e2(np);

  auto half_kick = [&](const VlasovState& fields) {
    kern::interp_bilinear(fields.efield.c1.data(), n, out.ens.x1.data(),
                          out.ens.x2.data(), e1.data(), np);
    kern::interp_bilinear(fields.efield.c2.data(), n, out.ens.x1.data(),
                          out.ens.x2.data(), e2.data(), np);
    kern::axpy(0.5 * dt, e1.data(), out.ens.v1.data(), np);
    kern::axpy(0.5 * dt, e2.data(), out.ens.v2.data(), np);
  };

  half_kick(out);  // fields at time t, positions at time t
  kern::drift_wrap(out.ens.x1.data(), out.ens.v1.data(), dt, np);
  kern::drift_wrap(out.ens.x2.data(), out.ens.v2.data(), dt, np);
  field_solve(out);
  half_kick(out);  // fields and positions at time t + dt
  out.time = s.time + dt;
  return out;
}

double q_star(const VlasovState& s) {
  return std::sqrt(kern::max_disp_sq(s.ens.v1.data(), s.ens.v2.data(),
                                     s.ens.v1_0.data(), s.ens.v2_0.data(),
                                     s.ens.size()));
}

EnergyScalar total_energy(const VlasovState& s) {
  EnergyScalar e;
  e.kinetic = 0.5 * kern::weighted_speed_sq(s.ens.w.data(), s.ens.v1.data(),
                                            s.ens.v2.data(), s.ens.size());
  e.field = 0.5 * s.eps * s.efield.l2_sq();
  e.total = e.kinetic + e.field;
  return e;
}

double velocity_moment(const VlasovState& s, int k) {
  if (k < 0 || k > 6)
    throw ConfigError("velocity_moment: k must lie in {0,...,6}");
  const std::size_t np = s.ens.size();
  if (k == 0) return kern::sum(s.ens.w.data(), np);
  if (k == 2)
    return kern::weighted_speed_sq(s.ens.w.data(), s.ens.v1.data(),
                                   s.ens.v2.data(), np);
  std::vector<double> payload(np);
  for (std::size_t p = 0; p < np; ++p)
    payload[p] = std::pow(std::hypot(s.ens.v1[p], s.ens.v2[p]), k);
  return kern::dot(s.ens.w.data(), payload.data(), np);
}

double field_lp_norm(const VlasovState& s, double p) {
  const std::size_t m = s.efield.c1.size();
  const double* a = s.efield.c1.data();
  const double* b = s.efield.c2.data();
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double ss = a[i] * a[i] + b[i] * b[i];
      if (ss > best) best = ss;
    }
    return std::sqrt(best);
  }
  if (!(p >= 1.0)) throw ConfigError("field_lp_norm: p must be >= 1");
  std::vector<double> mag(m);
  for (std::size_t i = 0; i < m; ++i)
    mag[i] = std::pow(a[i] * a[i] + b[i] * b[i], 0.5 * p);
  return std::pow(kern::sum(mag.data(), m) * s.grid.cell_area(), 1.0 / p);
}

}  // namespace qnlab

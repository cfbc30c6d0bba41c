#include "qnlab/modulated.hpp"

#include <cmath>
#include <string>

#include "qnlab/audit_constants.hpp"

namespace qnlab {
namespace {

void require_sync(const VlasovState& vp, const EulerState& eu, double tol) {
  if (std::fabs(vp.time - eu.time) > tol)
    throw ContractError("states out of sync: vp at t = " +
                        std::to_string(vp.time) + ", euler at t = " +
                        std::to_string(eu.time));
}

// Interpolate both velocity components at the particle positions.
void velocity_at_particles(const VlasovState& vp, const VectorField& u,
                           std::vector<double>& u1, std::vector<double>& u2) {
  const std::size_t np = vp.ens.size();
  u1.resize(np);
  u2.resize(np);
  kern::interp_bilinear(u.c1.data(), vp.grid.n, vp.ens.x1.data(),
                        vp.ens.x2.data(), u1.data(), np);
  kern::interp_bilinear(u.c2.data(), vp.grid.n, vp.ens.x1.data(),
                        vp.ens.x2.data(), u2.data(), np);
}

double worst_ratio(const std::vector<double>& lhs,
                   const std::vector<double>& rhs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (rhs[i] > 0.0) worst = std::max(worst, lhs[i] / rhs[i]);
  return worst;
}

}  // namespace

BoundInputs make_bound_inputs(double eps, double alpha, double beta,
                              double mbar) {
  if (!(eps > 0.0)) throw ConfigError("bound inputs: eps must be positive");
  if (!(mbar >= 0.0)) throw ConfigError("bound inputs: mbar must be >= 0");
  BoundInputs in;
  in.eps = eps;
  in.alpha = alpha;
  in.beta = beta;
  in.mbar = mbar;
  in.mbold = (1.0 + std::sqrt(mbar)) / eps;
  return in;
}

EnergyBreakdown modulated_energy(const VlasovState& vp, const EulerState& eu,
                                 double sync_tol) {
  require_sync(vp, eu, sync_tol);
  std::vector<double> u1, u2;
  velocity_at_particles(vp, eu.u, u1, u2);
  const std::size_t np = vp.ens.size();
  for (std::size_t p = 0; p < np; ++p) {
    u1[p] = vp.ens.v1[p] - u1[p];
    u2[p] = vp.ens.v2[p] - u2[p];
  }
  EnergyBreakdown e;
  e.kinetic =
      0.5 * kern::weighted_speed_sq(vp.ens.w.data(), u1.data(), u2.data(), np);
  e.field = 0.5 * vp.eps * vp.efield.l2_sq();
  e.total = e.kinetic + e.field;
  return e;
}

TensorField f_tensor(const VlasovState& vp, const EulerState& eu,
                     double sync_tol) {
  require_sync(vp, eu, sync_tol);
  std::vector<double> d1, d2;
  velocity_at_particles(vp, eu.u, d1, d2);
  const std::size_t np = vp.ens.size();
  std::vector<double> p11(np), p12(np), p22(np);
  for (std::size_t p = 0; p < np; ++p) {
    d1[p] = vp.ens.v1[p] - d1[p];
    d2[p] = vp.ens.v2[p] - d2[p];
    p11[p] = d1[p] * d1[p];
    p12[p] = d1[p] * d2[p];
    p22[p] = d2[p] * d2[p];
  }
  TensorField out(vp.grid);
  out.t11 = deposit(vp.ens, vp.grid, p11.data());
  out.t12 = deposit(vp.ens, vp.grid, p12.data());
  out.t21 = out.t12;
  out.t22 = deposit(vp.ens, vp.grid, p22.data());
  return out;
}

DerivativeBreakdown i_terms(const VlasovState& vp, const EulerState& eu,
                            double sync_tol) {
  require_sync(vp, eu, sync_tol);
  const std::size_t np = vp.ens.size();
  const int n = vp.grid.n;
  TensorField d = strain(eu.u);

  // I1: strain and velocity interpolated to particles.
  std::vector<double> u1, u2;
  velocity_at_particles(vp, eu.u, u1, u2);
  std::vector<double> d11(np), d12(np), d22(np), payload(np);
  kern::interp_bilinear(d.t11.data(), n, vp.ens.x1.data(), vp.ens.x2.data(),
                        d11.data(), np);
  kern::interp_bilinear(d.t12.data(), n, vp.ens.x1.data(), vp.ens.x2.data(),
                        d12.data(), np);
  kern::interp_bilinear(d.t22.data(), n, vp.ens.x1.data(), vp.ens.x2.data(),
                        d22.data(), np);
  for (std::size_t p = 0; p < np; ++p) {
    double a = vp.ens.v1[p] - u1[p];
    double b = vp.ens.v2[p] - u2[p];
    payload[p] = d11[p] * a * a + 2.0 * d12[p] * a * b + d22[p] * b * b;
  }
  DerivativeBreakdown out;
  out.i1 = -kern::dot(vp.ens.w.data(), payload.data(), np);

  // I2: grid contraction with grad phi tensor grad phi (= E tensor E).
  const std::size_t m = d.t11.size();
  std::vector<double> grid_payload(m);
  const double* e1 = vp.efield.c1.data();
  const double* e2 = vp.efield.c2.data();
  for (std::size_t i = 0; i < m; ++i)
    grid_payload[i] = d.t11.v[i] * e1[i] * e1[i] +
                      2.0 * d.t12.v[i] * e1[i] * e2[i] +
                      d.t22.v[i] * e2[i] * e2[i];
  out.i2 = vp.eps * kern::sum(grid_payload.data(), m) * vp.grid.cell_area();

  // I3: (A . u)(rho - 1).
  VectorField a = material_accel(eu);
  for (std::size_t i = 0; i < m; ++i)
    grid_payload[i] = (a.c1.v[i] * eu.u.c1.v[i] + a.c2.v[i] * eu.u.c2.v[i]) *
                      (vp.rho.v[i] - 1.0);
  out.i3 = kern::sum(grid_payload.data(), m) * vp.grid.cell_area();

  out.sum = out.i1 + out.i2 + out.i3;
  return out;
}

double gamma_bound(double t, const BoundInputs& in) {
  if (t < 0.0) throw ConfigError("gamma_bound: t must be >= 0");
  const double m = in.mbold;
  return m + m * m * m * t * t * (1.0 + std::log1p(m * t));
}

ForceBound force_bound(double rho_inf, double rho_l2, double eps, double l) {
  if (!(l > 0.0 && l < 1.0))
    throw ConfigError("force_bound: l must lie in (0, 1)");
  if (!(eps > 0.0) || rho_inf < 0.0 || rho_l2 < 0.0)
    throw ConfigError("force_bound: invalid arguments");
  auto eval = [&](double ell) {
    return (2.0 / eps) * audit::kGradV0Inf +
           (ell / eps) * (rho_inf + 1.0) +
           std::sqrt(std::fabs(std::log(ell))) / eps * (rho_l2 + 1.0);
  };
  ForceBound out;
  out.value = eval(l);
  out.optimized_l = 1.0 / (1.0 + rho_inf);
  out.optimized_value = eval(out.optimized_l);
  return out;
}

DensityBoundAudit density_bound_audit(const RunHistory& h,
                                      const BoundInputs& in) {
  if (h.size() == 0) throw ContractError("density audit: empty run history");
  const std::size_t steps = h.size();
  std::vector<double> rhs(steps);
  DensityBoundAudit out;

  out.rho_gamma = make_report("rho_inf_vs_gamma",
                              worst_ratio(h.rho_inf, h.gamma), 1.0,
                              audit::kRhoGammaC);

  for (std::size_t i = 0; i < steps; ++i)
    rhs[i] = in.mbar * (1.0 + h.qstar[i] * h.qstar[i]);
  out.rho_qstar = make_report("rho_inf_vs_qstar", worst_ratio(h.rho_inf, rhs),
                              1.0, audit::kRhoQstarC);

  for (std::size_t i = 0; i < steps; ++i) rhs[i] = h.gamma[i] * h.gamma[i];
  out.m2_gamma = make_report("m2_inf_vs_gamma2", worst_ratio(h.m2_inf, rhs),
                             1.0, audit::kM2GammaC);

  for (std::size_t i = 0; i < steps; ++i) {
    double q2 = h.qstar[i] * h.qstar[i];
    rhs[i] = in.mbar * (1.0 + q2 * q2);
  }
  out.m2_qstar = make_report("m2_inf_vs_qstar", worst_ratio(h.m2_inf, rhs),
                             1.0, audit::kM2QstarC);

  for (std::size_t i = 0; i < steps; ++i)
    rhs[i] = std::sqrt(h.m_2[i]) * std::sqrt(in.mbar);
  out.rho_l2 = make_report("rho_l2_vs_m2", worst_ratio(h.rho_l2, rhs), 1.0,
                           audit::kRhoL2C);
  return out;
}

NormReport gronwall_audit(const RunHistory& h, const BoundInputs& in) {
  if (h.size() < 3) throw ContractError("gronwall audit: need >= 3 steps");
  const double eta = in.eps;  // eta = eps^delta with delta = 1
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < h.size(); ++i) {
    double dedt = (h.e_total[i + 1] - h.e_total[i - 1]) /
                  (h.t[i + 1] - h.t[i - 1]);
    double g = h.gamma[i];
    double rhs = in.eps + eta +
                 (std::log(g * g + g) + std::log1p(g * g) +
                  std::log(1.0 / eta)) *
                     h.e_total[i];
    if (rhs > 0.0) worst = std::max(worst, dedt / rhs);
  }
  return make_report("gronwall", worst, 1.0, audit::kGronwallC);
}

NormReport force_bound_audit(const RunHistory& h, const BoundInputs& in) {
  double worst = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    ForceBound fb = force_bound(h.rho_inf[i], h.rho_l2[i], in.eps, 0.5);
    worst = std::max(worst, h.grad_phi_inf[i] / fb.optimized_value);
  }
  // The bound carries no fitted constant: measured force must sit below it.
  return make_report("force_bound", worst, 1.0, 1.0);
}

NormReport moment_rate_audit(const RunHistory& h, int k) {
  if (k != 2 && k != 3)
    throw ConfigError("moment_rate_audit: k must be 2 or 3");
  if (h.size() < 3) throw ContractError("moment audit: need >= 3 steps");
  const std::vector<double>& mk = (k == 2) ? h.m_2 : h.m_3;
  const std::vector<double>& gp = (k == 2) ? h.grad_phi_l4 : h.grad_phi_l5;
  const double expo = double(k + 1) / double(k + 2);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < h.size(); ++i) {
    double dm = std::fabs((mk[i + 1] - mk[i - 1]) / (h.t[i + 1] - h.t[i - 1]));
    double rhs = double(k) * gp[i] * std::pow(mk[i], expo);
    if (rhs > 1e-300) worst = std::max(worst, dm / rhs);
  }
  return make_report(k == 2 ? "moment_rate_k2" : "moment_rate_k3", worst, 1.0,
                     k == 2 ? audit::kMomentRateC2 : audit::kMomentRateC3);
}

NormReport moment_interp_audit(const RunHistory& h, double f_inf) {
  std::vector<double> rhs(h.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    rhs[i] = std::sqrt(f_inf) * std::sqrt(h.m_2[i]);
  return make_report("moment_interp_rho", worst_ratio(h.rho_l2, rhs), 1.0,
                     audit::kMomentInterpC);
}

NormReport moment_interp42_audit(const RunHistory& h, double f_inf) {
  std::vector<double> rhs(h.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    rhs[i] = std::cbrt(f_inf) * std::pow(h.m_4[i], 2.0 / 3.0);
  return make_report("moment_interp_m2", worst_ratio(h.m2_l32, rhs), 1.0,
                     audit::kMomentInterp42C);
}

}  // namespace qnlab

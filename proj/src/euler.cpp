#include "qnlab/euler.hpp"

#include <cmath>
#include <string>

#include "qnlab/audit_constants.hpp"

namespace qnlab {
namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

// Spectral velocity from a vorticity spectrum (saves a forward transform
// inside the RK stages).
void velocity_from_spectrum(const Spectrum& w, const TorusGrid& grid,
                            ScalarField& u1, ScalarField& u2) {
  const int n = grid.n;
  Spectrum s1(w.size()), s2(w.size());
  for (int ix = 0; ix < n; ++ix) {
    const int k1 = fft_k1(ix, n);
    for (int iy = 0; iy <= n / 2; ++iy) {
      std::size_t idx = static_cast<std::size_t>(ix) * (n / 2 + 1) + iy;
      if (k1 == 0 && iy == 0) {
        s1[idx] = s2[idx] = 0.0;
        continue;
      }
      const double fourpisq = kTwoPi * kTwoPi;
      const std::complex<double> psi =
          -w[idx] / (fourpisq * (double(k1) * k1 + double(iy) * iy));
      const std::complex<double> i_unit(0.0, 1.0);
      double g1 = (ix == n / 2) ? 0.0 : kTwoPi * k1;
      double g2 = (iy == n / 2) ? 0.0 : kTwoPi * iy;
      s1[idx] = -i_unit * g2 * psi;
      s2[idx] = i_unit * g1 * psi;
    }
  }
  u1 = fft_inverse(s1, grid);
  u2 = fft_inverse(s2, grid);
}

// Spectral right-hand side -div(omega u), dealiased.
Spectrum euler_rhs(const Spectrum& w, const TorusGrid& grid) {
  const int n = grid.n;
  ScalarField omega = fft_inverse(w, grid);
  ScalarField u1(grid), u2(grid);
  velocity_from_spectrum(w, grid, u1, u2);
  ScalarField f1(grid), f2(grid);
  kern::mul(omega.data(), u1.data(), f1.data(), omega.size());
  kern::mul(omega.data(), u2.data(), f2.data(), omega.size());
  Spectrum s1 = fft_forward(f1);
  Spectrum s2 = fft_forward(f2);
  Spectrum out(w.size());
  for (int ix = 0; ix < n; ++ix) {
    const int k1 = fft_k1(ix, n);
    for (int iy = 0; iy <= n / 2; ++iy) {
      std::size_t idx = static_cast<std::size_t>(ix) * (n / 2 + 1) + iy;
      const std::complex<double> i_unit(0.0, 1.0);
      double g1 = (ix == n / 2) ? 0.0 : kTwoPi * k1;
      double g2 = (iy == n / 2) ? 0.0 : kTwoPi * iy;
      out[idx] = -i_unit * (g1 * s1[idx] + g2 * s2[idx]);
    }
  }
  dealias(out, n);
  return out;
}

}  // namespace

EulerState make_euler_state(const ScalarField& omega0) {
  double m = omega0.mean();
  if (std::fabs(m) > 1e-10)
    throw ContractError("euler: incompatible source (nonzero-mean vorticity)");
  EulerState s;
  s.omega = dealias(omega0);
  s.omega.shift(-s.omega.mean());
  s.time = 0.0;
  s.u = biot_savart(s.omega);
  return s;
}

EulerState step_euler(const EulerState& s, double dt) {
  const TorusGrid& grid = s.omega.grid;
  const double umax = s.u.max_norm();
  const double cfl = grid.h / (2.0 * umax + 1e-300);
  if (!(dt > 0.0) || dt > cfl * (1.0 + 1e-12))
    throw ConfigError("euler step: dt = " + std::to_string(dt) +
                      " violates the advective CFL bound " +
                      std::to_string(cfl));
  Spectrum w = fft_forward(s.omega);
  dealias(w, grid.n);

  auto saxpy = [](Spectrum a, double c, const Spectrum& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
    return a;
  };

  Spectrum k1 = euler_rhs(w, grid);
  Spectrum k2 = euler_rhs(saxpy(w, 0.5 * dt, k1), grid);
  Spectrum k3 = euler_rhs(saxpy(w, 0.5 * dt, k2), grid);
  Spectrum k4 = euler_rhs(saxpy(w, dt, k3), grid);
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] += (dt / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);

  EulerState out;
  out.omega = fft_inverse(w, grid);
  out.time = s.time + dt;
  out.u = biot_savart(out.omega);
  return out;
}

TensorField strain(const VectorField& u) {
  VectorField g1 = gradient(u.c1);  // (d1 u1, d2 u1)
  VectorField g2 = gradient(u.c2);  // (d1 u2, d2 u2)
  TensorField d(u.grid());
  for (std::size_t i = 0; i < d.t11.size(); ++i) {
    d.t11.v[i] = g1.c1.v[i];
    d.t22.v[i] = g2.c2.v[i];
    double off = 0.5 * (g2.c1.v[i] + g1.c2.v[i]);
    d.t12.v[i] = off;
    d.t21.v[i] = off;
  }
  return d;
}

VectorField material_accel(const EulerState& s) {
  VectorField g1 = gradient(s.u.c1);
  VectorField g2 = gradient(s.u.c2);
  ScalarField q(s.omega.grid);
  for (std::size_t i = 0; i < q.size(); ++i)
    q.v[i] = g1.c1.v[i] * g1.c1.v[i] + 2.0 * g2.c1.v[i] * g1.c2.v[i] +
             g2.c2.v[i] * g2.c2.v[i];
  q.shift(-q.mean());
  ScalarField p = poisson_neg(q, 1.0);  // -Lap p = q, i.e. Lap p = -q
  VectorField a = gradient(p);
  a.c1 *= -1.0;
  a.c2 *= -1.0;
  return a;
}

double lp_norm(const ScalarField& f, double p) {
  if (std::isinf(p)) return f.max_abs();
  if (p == 1.0) return kern::sum_abs(f.data(), f.size()) * f.grid.cell_area();
  if (p == 2.0) return f.l2_norm();
  if (p == 4.0) {
    std::vector<double> sq(f.size());
    kern::mul(f.data(), f.data(), sq.data(), f.size());
    return std::pow(kern::sum_sq(sq.data(), sq.size()) * f.grid.cell_area(),
                    0.25);
  }
  throw ConfigError("lp_norm: p must be one of {1, 2, 4, inf}");
}

NormReport yudovich_velocity_bound_check(const std::vector<double>& max_u_series,
                                         double omega0_inf) {
  double lhs = 0.0;
  for (double v : max_u_series) lhs = std::max(lhs, v);
  return make_report("yudovich_velocity", lhs, omega0_inf, audit::kYudovichC);
}

}  // namespace qnlab

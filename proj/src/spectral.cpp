#include "qnlab/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qnlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

void require_zero_mean(const ScalarField& f, const char* who) {
  double m = f.mean();
  if (std::fabs(m) > 1e-10)
    throw ContractError(std::string(who) +
                        ": incompatible source (mean = " + std::to_string(m) +
                        ", expected 0)");
}

}  // namespace

ScalarField poisson_neg(const ScalarField& rhs, double eps) {
  if (!(eps > 0.0)) throw ConfigError("poisson_neg: eps must be positive");
  require_zero_mean(rhs, "poisson_neg");
  const int n = rhs.grid.n;
  Spectrum s = fft_forward(rhs);
  for (int ix = 0; ix < n; ++ix) {
    const int k1 = fft_k1(ix, n);
    for (int iy = 0; iy <= n / 2; ++iy) {
      auto& c = s[static_cast<std::size_t>(ix) * (n / 2 + 1) + iy];
      if (k1 == 0 && iy == 0) {
        c = 0.0;
        continue;
      }
      // Two-stage division keeps phi(eps/2) = 2*phi(eps) bit-exact.
      c /= kFourPiSq * (double(k1) * k1 + double(iy) * iy);
      c /= eps;
    }
  }
  return fft_inverse(s, rhs.grid);
}

VectorField gradient(const ScalarField& f) {
  const int n = f.grid.n;
  Spectrum s = fft_forward(f);
  Spectrum d1(s.size()), d2(s.size());
  for (int ix = 0; ix < n; ++ix) {
    const int k1 = fft_k1(ix, n);
    for (int iy = 0; iy <= n / 2; ++iy) {
      std::size_t idx = static_cast<std::size_t>(ix) * (n / 2 + 1) + iy;
      const std::complex<double> c = s[idx];
      const std::complex<double> i_unit(0.0, 1.0);
      // The Nyquist mode has no well-defined odd derivative; drop it.
      double g1 = (ix == n / 2) ? 0.0 : kTwoPi * k1;
      double g2 = (iy == n / 2) ? 0.0 : kTwoPi * iy;
      d1[idx] = i_unit * g1 * c;
      d2[idx] = i_unit * g2 * c;
    }
  }
  return VectorField(fft_inverse(d1, f.grid), fft_inverse(d2, f.grid));
}

VectorField biot_savart(const ScalarField& omega) {
  require_zero_mean(omega, "biot_savart");
  const int n = omega.grid.n;
  Spectrum s = fft_forward(omega);
  Spectrum u1(s.size()), u2(s.size());
  for (int ix = 0; ix < n; ++ix) {
    const int k1 = fft_k1(ix, n);
    for (int iy = 0; iy <= n / 2; ++iy) {
      std::size_t idx = static_cast<std::size_t>(ix) * (n / 2 + 1) + iy;
      if (k1 == 0 && iy == 0) {
        u1[idx] = u2[idx] = 0.0;
        continue;
      }
      // psi_hat = -omega_hat / (4 pi^2 |k|^2); u = (-d2 psi, d1 psi).
      const std::complex<double> psi =
          -s[idx] / (kFourPiSq * (double(k1) * k1 + double(iy) * iy));
      const std::complex<double> i_unit(0.0, 1.0);
      double g1 = (ix == n / 2) ? 0.0 : kTwoPi * k1;
      double g2 = (iy == n / 2) ? 0.0 : kTwoPi * iy;
      u1[idx] = -i_unit * g2 * psi;
      u2[idx] = i_unit * g1 * psi;
    }
  }
  return VectorField(fft_inverse(u1, omega.grid), fft_inverse(u2, omega.grid));
}

ScalarField curl(const VectorField& u) {
  VectorField g1 = gradient(u.c1);
  VectorField g2 = gradient(u.c2);
  ScalarField out(u.grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.v[i] = g2.c1.v[i] - g1.c2.v[i];
  return out;
}

ScalarField divergence(const VectorField& u) {
  VectorField g1 = gradient(u.c1);
  VectorField g2 = gradient(u.c2);
  ScalarField out(u.grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.v[i] = g1.c1.v[i] + g2.c2.v[i];
  return out;
}

double h_minus1_norm(const ScalarField& f) {
  const int n = f.grid.n;
  Spectrum s = fft_forward(f);
  const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
  double acc = 0.0;
  for (int ix = 0; ix < n; ++ix) {
    const int k1 = fft_k1(ix, n);
    for (int iy = 0; iy <= n / 2; ++iy) {
      if (k1 == 0 && iy == 0) continue;
      std::size_t idx = static_cast<std::size_t>(ix) * (n / 2 + 1) + iy;
      // Columns 0 < iy < n/2 represent a conjugate pair (k2 and -k2).
      double mult = (iy == 0 || iy == n / 2) ? 1.0 : 2.0;
      double mag = std::abs(s[idx]) * inv_n2;
      acc += mult * mag * mag / (kFourPiSq * (double(k1) * k1 + double(iy) * iy));
    }
  }
  return std::sqrt(acc);
}

double weak_gap(const ScalarField& f, int kmax) {
  const int n = f.grid.n;
  if (kmax <= 0 || kmax > n / 3)
    throw ConfigError("weak_gap: kmax must lie in [1, n/3]");
  Spectrum s = fft_forward(f);
  const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
  double best = 0.0;
  for (int k1 = -kmax; k1 <= kmax; ++k1) {
    int ix = k1 >= 0 ? k1 : k1 + n;
    for (int k2 = 0; k2 <= kmax; ++k2) {
      // |<f, e_{(k1,-k2)}>| = |<f, e_{(-k1,k2)}>|, so k2 >= 0 covers all modes.
      std::size_t idx = static_cast<std::size_t>(ix) * (n / 2 + 1) + k2;
      double mag = std::abs(s[idx]) * inv_n2;
      if (mag > best) best = mag;
    }
  }
  return best;
}

void dealias(Spectrum& s, int n) {
  const int kcut = n / 3;
  for (int ix = 0; ix < n; ++ix) {
    const int k1 = fft_k1(ix, n);
    for (int iy = 0; iy <= n / 2; ++iy) {
      if (std::abs(k1) > kcut || iy > kcut)
        s[static_cast<std::size_t>(ix) * (n / 2 + 1) + iy] = 0.0;
    }
  }
}

ScalarField dealias(const ScalarField& f) {
  Spectrum s = fft_forward(f);
  dealias(s, f.grid.n);
  return fft_inverse(s, f.grid);
}

}  // namespace qnlab

#include "qnlab/initdata.hpp"

#include <cmath>
#include <numbers>

#include "qnlab/euler.hpp"
#include "qnlab/modulated.hpp"
#include "qnlab/rng.hpp"
#include "qnlab/spectral.hpp"
#include "qnlab/vlasov.hpp"

namespace qnlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScalarField random_bounded_field(double amplitude, std::uint64_t seed,
                                 const TorusGrid& grid) {
  // Band-limited (|k|_inf <= 4) field with seeded coefficients, normalized
  // so the sup norm equals the amplitude exactly on the grid.
  ScalarField f(grid);
  std::uint64_t ctr = 0;
  for (int k1 = -4; k1 <= 4; ++k1)
    for (int k2 = -4; k2 <= 4; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      if (k1 < 0 || (k1 == 0 && k2 < 0)) continue;  // one per conjugate pair
      double amp = 2.0 * uniform01(seed, ctr++) - 1.0;
      double phase = kTwoPi * uniform01(seed, ctr++);
      for (int ix = 0; ix < grid.n; ++ix)
        for (int iy = 0; iy < grid.n; ++iy)
          f.at(ix, iy) += amp * std::cos(kTwoPi * (k1 * grid.node(ix) +
                                                   k2 * grid.node(iy)) +
                                         phase);
    }
  f.shift(-f.mean());
  double sup = f.max_abs();
  if (sup > 0.0) f *= amplitude / sup;
  return f;
}

}  // namespace

VorticityInit vorticity_library(const std::string& name, double amplitude,
                                double radius, std::uint64_t seed,
                                const TorusGrid& grid) {
  VorticityInit out;
  if (name == "shear") {
    out.omega = make_field(grid, [&](double x1, double) {
      return amplitude * std::sin(kTwoPi * x1);
    });
    out.sup_norm = std::fabs(amplitude);
  } else if (name == "eigenpair") {
    out.omega = make_field(grid, [&](double x1, double x2) {
      return amplitude * std::sin(kTwoPi * x1) * std::sin(kTwoPi * x2);
    });
    out.sup_norm = std::fabs(amplitude);
  } else if (name == "smoothed_patch") {
    if (!(radius > 0.0 && radius < 0.5))
      throw ConfigError("smoothed_patch: radius must lie in (0, 0.5)");
    const double edge = 4.0 * grid.h;
    out.omega = make_field(grid, [&](double x1, double x2) {
      double r = std::hypot(x1, x2);
      return amplitude * 0.5 * (1.0 - std::tanh((r - radius) / edge));
    });
    out.omega.shift(-out.omega.mean());
    out.sup_norm = out.omega.max_abs();
  } else if (name == "random_bounded") {
    out.omega = random_bounded_field(amplitude, seed, grid);
    out.sup_norm = out.omega.max_abs();
  } else {
    throw ConfigError("unknown vorticity family '" + name + "'");
  }
  return out;
}

WellPreparedSpec make_well_prepared(double eps, double beta,
                                    const VorticityInit& w0, int ppc,
                                    std::uint64_t seed) {
  if (!(eps > 0.0) || !(beta > 0.0))
    throw ConfigError("well-prepared data: eps and beta must be positive");
  WellPreparedSpec spec;
  spec.eps = eps;
  spec.beta = beta;
  spec.omega0 = w0.omega;
  spec.u0 = biot_savart(w0.omega);
  spec.omega0_inf = w0.sup_norm;
  spec.ppc = ppc;
  spec.seed = seed;
  return spec;
}

ParticleEnsemble sample_well_prepared(const WellPreparedSpec& spec) {
  const TorusGrid& grid = spec.omega0.grid;
  const int n = grid.n;
  const int s = static_cast<int>(std::lround(std::sqrt(double(spec.ppc))));
  if (s * s != spec.ppc || spec.ppc < 4)
    throw ConfigError("sample: ppc must be a perfect square >= 4 to stratify");
  if (!(spec.perturbation >= 0.0))
    throw ConfigError("sample: perturbation must be >= 0");
  const std::size_t np = static_cast<std::size_t>(n) * n * spec.ppc;
  ParticleEnsemble ens;
  ens.resize(np);
  const double sub = grid.h / s;
  const double jit = kJitterAmplitude * spec.perturbation;
  const double sigma =
      spec.perturbation * std::sqrt(std::pow(spec.eps, spec.beta));
  const double w = 1.0 / static_cast<double>(np);

  std::size_t p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int q1 = 0; q1 < s; ++q1)
        for (int q2 = 0; q2 < s; ++q2, ++p) {
          const std::uint64_t base = 4 * static_cast<std::uint64_t>(p);
          double j1 = jit * (uniform01(spec.seed, base) - 0.5);
          double j2 = jit * (uniform01(spec.seed, base + 1) - 0.5);
          ens.x1[p] = -0.5 + i * grid.h + (q1 + 0.5 + j1) * sub;
          ens.x2[p] = -0.5 + j * grid.h + (q2 + 0.5 + j2) * sub;
          ens.w[p] = w;
        }

  // Mean velocity from the prescribed flow, thermal spread on top.
  std::vector<double> u1(np), u2(np);
  kern::interp_bilinear(spec.u0.c1.data(), n, ens.x1.data(), ens.x2.data(),
                        u1.data(), np);
  kern::interp_bilinear(spec.u0.c2.data(), n, ens.x1.data(), ens.x2.data(),
                        u2.data(), np);
  for (p = 0; p < np; ++p) {
    double g1, g2;
    gauss_pair(spec.seed, 4 * static_cast<std::uint64_t>(p) + 2, &g1, &g2);
    ens.v1[p] = u1[p] + sigma * g1;
    ens.v2[p] = u2[p] + sigma * g2;
  }
  ens.v1_0 = ens.v1;
  ens.v2_0 = ens.v2;
  return ens;
}

double analytic_initial_energy(double eps, double beta) {
  return std::pow(eps, beta);
}

double maxwellian_sup(double eps, double beta) {
  return 1.0 / (kTwoPi * std::pow(eps, beta));
}

double analytic_mbar(double eps, double beta, double k0, double u0_inf) {
  const double theta = std::pow(eps, beta);
  const double split = std::pow(2.0, k0 - 1.0);  // (a+b)^k <= 2^{k-1}(a^k+b^k)
  const double gauss_moment =
      std::pow(2.0, 0.5 * k0) * std::tgamma(0.5 * k0 + 1.0);
  const double l1 =
      1.0 + split * (std::pow(u0_inf, k0) +
                     std::pow(theta, 0.5 * k0) * gauss_moment);
  const double tail_sup =
      std::pow(k0 * theta, 0.5 * k0) * std::exp(-0.5 * k0);
  const double linf = (1.0 / (kTwoPi * theta)) *
                      (1.0 + split * (std::pow(u0_inf, k0) + tail_sup));
  return std::max(l1, linf);
}

HypothesisReport verify_hypotheses(const ParticleEnsemble& ens,
                                   const WellPreparedSpec& spec, double k0,
                                   double alpha) {
  if (!(k0 > 4.0))
    throw ConfigError("hypothesis check: k0 must exceed 4");
  HypothesisReport rep;

  rep.measured_mass = kern::sum(ens.w.data(), ens.size());
  bool nonneg = true;
  for (double wi : ens.w)
    if (!(wi >= 0.0)) nonneg = false;
  rep.h1_mass = nonneg && std::fabs(rep.measured_mass - 1.0) <= 1e-12;

  rep.mbar = analytic_mbar(spec.eps, spec.beta, k0, spec.u0.max_norm());
  rep.h2_bound = std::isfinite(rep.mbar) && alpha >= spec.beta;

  VlasovState vp = make_vlasov_state(ens, spec.omega0.grid, spec.eps);
  EulerState eu = make_euler_state(spec.omega0);
  rep.measured_energy = modulated_energy(vp, eu).total;
  rep.expected_energy = analytic_initial_energy(spec.eps, spec.beta);
  rep.h3_energy = std::fabs(rep.measured_energy - rep.expected_energy) <=
                  0.05 * rep.expected_energy;

  rep.omega0_inf = spec.omega0_inf;
  VectorField u_check = biot_savart(spec.omega0);
  double resid = 0.0;
  for (std::size_t i = 0; i < u_check.c1.size(); ++i) {
    resid = std::max(resid, std::fabs(u_check.c1.v[i] - spec.u0.c1.v[i]));
    resid = std::max(resid, std::fabs(u_check.c2.v[i] - spec.u0.c2.v[i]));
  }
  rep.curl_residual = resid;
  rep.h4_vorticity = std::isfinite(rep.omega0_inf) && resid <= 1e-10;
  return rep;
}

}  // namespace qnlab

/// Initial-data library: the four vorticity families, the stratified
/// near-monokinetic sampler (quiet start, thermal spread eps^beta), the
/// analytic data constants, and the hypothesis verifier H1-H4.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qnlab/initdata.hpp"
#include "qnlab/modulated.hpp"
#include "qnlab/vlasov.hpp"

using namespace qnlab;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("vorticity_library: shear and eigenpair closed forms") {
  TorusGrid g(64);
  VorticityInit shear = vorticity_library("shear", 1.5, 0.2, 1, g);
  CHECK(shear.sup_norm == doctest::Approx(1.5).epsilon(1e-12));
  for (int ix : {0, 5, 17}) {
    double x1 = g.node(ix);
    CHECK(shear.omega.at(ix, 3) ==
          doctest::Approx(1.5 * std::sin(kTwoPi * x1)).epsilon(1e-12));
  }

  VorticityInit eig = vorticity_library("eigenpair", 2.0, 0.2, 1, g);
  CHECK(eig.sup_norm == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eig.omega.at(48, 48) ==
        doctest::Approx(2.0 * std::sin(kTwoPi * 0.25) * std::sin(kTwoPi * 0.25))
            .epsilon(1e-12));
  CHECK(std::fabs(eig.omega.mean()) < 1e-14);
}

TEST_CASE("vorticity_library: smoothed patch") {
  TorusGrid g(64);
  VorticityInit patch = vorticity_library("smoothed_patch", 1.0, 0.15, 1, g);
  // Mean-subtracted, so admissible as Euler data.
  CHECK(std::fabs(patch.omega.mean()) < 1e-13);
  // Center value is close to amplitude minus the subtracted mean.
  double inside = patch.omega.at(32, 32);
  double outside = patch.omega.at(0, 0);
  CHECK(inside - outside == doctest::Approx(1.0).epsilon(0.02));
  CHECK(patch.sup_norm == doctest::Approx(patch.omega.max_abs()).epsilon(1e-12));
  CHECK_THROWS_AS(vorticity_library("smoothed_patch", 1.0, 0.0, 1, g),
                  ConfigError);
  CHECK_THROWS_AS(vorticity_library("smoothed_patch", 1.0, 0.5, 1, g),
                  ConfigError);
}

TEST_CASE("vorticity_library: random bounded family") {
  TorusGrid g(64);
  VorticityInit r1 = vorticity_library("random_bounded", 0.8, 0.2, 42, g);
  CHECK(r1.sup_norm == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(r1.omega.max_abs() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(std::fabs(r1.omega.mean()) < 1e-13);

  // Deterministic in the seed, distinct across seeds.
  VorticityInit r2 = vorticity_library("random_bounded", 0.8, 0.2, 42, g);
  double diff_same = 0.0, diff_other = 0.0;
  VorticityInit r3 = vorticity_library("random_bounded", 0.8, 0.2, 43, g);
  for (std::size_t i = 0; i < r1.omega.size(); ++i) {
    diff_same = std::max(diff_same, std::fabs(r1.omega.v[i] - r2.omega.v[i]));
    diff_other = std::max(diff_other, std::fabs(r1.omega.v[i] - r3.omega.v[i]));
  }
  CHECK(diff_same == 0.0);
  CHECK(diff_other > 1e-3);

  CHECK_THROWS_AS(vorticity_library("vortex_sheet", 1.0, 0.2, 1, g),
                  ConfigError);
}

TEST_CASE("make_well_prepared: derived fields and validation") {
  TorusGrid g(32);
  VorticityInit w0 = vorticity_library("shear", 1.0, 0.2, 1, g);
  WellPreparedSpec spec = make_well_prepared(0.1, 1.0, w0, 16, 7);
  CHECK(spec.eps == 0.1);
  CHECK(spec.beta == 1.0);
  CHECK(spec.ppc == 16);
  CHECK(spec.seed == 7);
  CHECK(spec.perturbation == 1.0);
  CHECK(spec.omega0_inf == doctest::Approx(1.0));
  // u0 is the Biot-Savart velocity of omega0.
  VectorField u = biot_savart(w0.omega);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.c1.size(); ++i)
    worst = std::max({worst, std::fabs(u.c1.v[i] - spec.u0.c1.v[i]),
                      std::fabs(u.c2.v[i] - spec.u0.c2.v[i])});
  CHECK(worst < 1e-14);

  CHECK_THROWS_AS(make_well_prepared(0.0, 1.0, w0, 16, 7), ConfigError);
  CHECK_THROWS_AS(make_well_prepared(0.1, 0.0, w0, 16, 7), ConfigError);
}

TEST_CASE("sample_well_prepared: bookkeeping and determinism") {
  TorusGrid g(32);
  VorticityInit w0 = vorticity_library("shear", 1.0, 0.2, 1, g);
  WellPreparedSpec spec = make_well_prepared(0.1, 1.0, w0, 16, 3);
  ParticleEnsemble a = sample_well_prepared(spec);
  a.validate();
  CHECK(a.size() == 32 * 32 * 16);
  // Uniform weights summing to one.
  CHECK(a.w[0] == doctest::Approx(1.0 / a.size()).epsilon(1e-15));
  // v*_0 snapshots the initial velocities.
  CHECK(a.v1_0[123] == a.v1[123]);
  CHECK(a.v2_0[123] == a.v2[123]);

  ParticleEnsemble b = sample_well_prepared(spec);
  for (std::size_t p = 0; p < a.size(); ++p) {
    CHECK(a.x1[p] == b.x1[p]);
    CHECK(a.v2[p] == b.v2[p]);
  }
  WellPreparedSpec other = spec;
  other.seed = 4;
  ParticleEnsemble c = sample_well_prepared(other);
  double diff = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p)
    diff = std::max(diff, std::fabs(a.v1[p] - c.v1[p]));
  CHECK(diff > 0.0);

  WellPreparedSpec bad = spec;
  bad.ppc = 12;  // not a perfect square
  CHECK_THROWS_AS(sample_well_prepared(bad), ConfigError);
  bad = spec;
  bad.perturbation = -0.5;
  CHECK_THROWS_AS(sample_well_prepared(bad), ConfigError);
}

TEST_CASE("sample_well_prepared: quiet start statistics") {
  TorusGrid g(32);
  VorticityInit w0 = vorticity_library("shear", 1.0, 0.2, 1, g);
  WellPreparedSpec spec = make_well_prepared(0.1, 1.0, w0, 16, 1);
  ParticleEnsemble ens = sample_well_prepared(spec);

  // Density stays within a few percent of 1 (stratified + small jitter).
  ScalarField rho = deposit_density(ens, g);
  CHECK(rho.max_abs() < 1.1);
  CHECK(rho.min() > 0.9);

  // The modulated kinetic energy reproduces the thermal budget eps^beta.
  VlasovState vp = make_vlasov_state(ens, g, 0.1);
  EulerState eu = make_euler_state(w0.omega);
  EnergyBreakdown e = modulated_energy(vp, eu);
  CHECK(e.kinetic ==
        doctest::Approx(analytic_initial_energy(0.1, 1.0)).epsilon(0.05));
  // Quiet start: spurious field energy far below the thermal signal.
  CHECK(e.field < 1e-3 * analytic_initial_energy(0.1, 1.0));
}

TEST_CASE("sample_well_prepared: zero perturbation is the cold lattice") {
  TorusGrid g(16);
  VorticityInit w0 = vorticity_library("eigenpair", 1.0, 0.2, 1, g);
  WellPreparedSpec spec = make_well_prepared(0.25, 1.0, w0, 16, 9);
  spec.perturbation = 0.0;
  ParticleEnsemble ens = sample_well_prepared(spec);
  // Every position sits exactly on the cell-centered sub-lattice
  // x = -1/2 + (k + 1/2)/m, and velocities are exactly u0 at the particle.
  const int m = 16 * 4;
  std::vector<double> u1(ens.size());
  kern::interp_bilinear(spec.u0.c1.data(), 16, ens.x1.data(), ens.x2.data(),
                        u1.data(), ens.size());
  for (std::size_t p = 0; p < ens.size(); ++p) {
    double k1 = (ens.x1[p] + 0.5) * m - 0.5;
    double k2 = (ens.x2[p] + 0.5) * m - 0.5;
    CHECK(k1 == doctest::Approx(std::round(k1)).epsilon(1e-12));
    CHECK(k2 == doctest::Approx(std::round(k2)).epsilon(1e-12));
    CHECK(ens.v1[p] == u1[p]);
  }
  // With no jitter and no thermal spread the seed is irrelevant.
  WellPreparedSpec other = spec;
  other.seed = 1234;
  ParticleEnsemble ens2 = sample_well_prepared(other);
  for (std::size_t p = 0; p < ens.size(); ++p) {
    CHECK(ens.x1[p] == ens2.x1[p]);
    CHECK(ens.v1[p] == ens2.v1[p]);
    CHECK(ens.v2[p] == ens2.v2[p]);
  }
}

TEST_CASE("analytic constants: energy, sup, mbar") {
  CHECK(analytic_initial_energy(0.1, 1.0) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(analytic_initial_energy(0.1, 2.0) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(maxwellian_sup(0.1, 1.0) ==
        doctest::Approx(1.0 / (kTwoPi * 0.1)).epsilon(1e-14));
  CHECK(maxwellian_sup(0.5, 2.0) ==
        doctest::Approx(1.0 / (kTwoPi * 0.25)).epsilon(1e-14));

  // Hand-evaluated scale for the reference configuration (theta = 0.1,
  // U = 1/(2 pi), k0 = 6): the L1 branch 1 + 32 (U^6 + theta^3 8 Gamma(4))
  // = 2.5365 dominates the L_inf branch 2.1401.
  double mbar = analytic_mbar(0.1, 1.0, 6.0, 1.0 / kTwoPi);
  CHECK(mbar == doctest::Approx(2.53652).epsilon(1e-4));
  // Colder data pushes the scale up like eps^-beta through the L_inf branch.
  CHECK(analytic_mbar(0.01, 1.0, 6.0, 1.0 / kTwoPi) > mbar);
  CHECK(std::isfinite(analytic_mbar(0.01, 2.0, 6.0, 1.0 / kTwoPi)));
}

TEST_CASE("verify_hypotheses: reference data passes, k0 guard") {
  TorusGrid g(32);
  VorticityInit w0 = vorticity_library("shear", 1.0, 0.2, 1, g);
  WellPreparedSpec spec = make_well_prepared(0.1, 1.0, w0, 25, 1);
  ParticleEnsemble ens = sample_well_prepared(spec);
  HypothesisReport hy = verify_hypotheses(ens, spec, 6.0, 1.0);
  CHECK(hy.h1_mass);
  CHECK(hy.h2_bound);
  CHECK(hy.h3_energy);
  CHECK(hy.h4_vorticity);
  CHECK(hy.all());
  CHECK(hy.measured_mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hy.mbar == doctest::Approx(2.53652).epsilon(1e-4));
  CHECK(hy.expected_energy == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(hy.measured_energy ==
        doctest::Approx(hy.expected_energy).epsilon(0.05));
  CHECK(hy.curl_residual < 1e-10);

  CHECK_THROWS_AS(verify_hypotheses(ens, spec, 4.0, 1.0), ConfigError);
  // alpha < beta breaks H2 (well-preparedness ordering) without throwing.
  HypothesisReport weak = verify_hypotheses(ens, spec, 6.0, 0.5);
  CHECK(!weak.h2_bound);
}

#pragma once

// Frozen constants for the inequality audits. Each value was produced by
// tools/qnlab_calibrate on the calibration seeds 1..10 (worst observed
// ratio times a 1.5 safety margin, see the tool for the exact recipe) and
// is asserted unchanged on fresh seeds by the acceptance suite. Regenerate
// with: qnlab_calibrate (then paste the printed block here).

namespace qnlab::audit {

// max_x |grad V0(x)| on a 512x512 node lattice; agrees with 1/pi, the
// log-kernel gradient at the edge midpoint where the periodic part is
// stationary.
inline constexpr double kGradV0Inf = 0.3183098861837907;

// sup_t max|u| <= C |omega_0|_inf for the Biot-Savart velocity.
// Calibrated worst 0.16.
inline constexpr double kYudovichC = 1.0;

// BMO(grad u components) <= A |omega|_inf. Calibrated worst 0.64.
inline constexpr double kCzA = 2.0;

// |integral f g| <= C |Mf|_L1 |g|_BMO (mean-zero g) / |g|_bmo variants.
// Calibrated worsts 0.163 / 0.164.
inline constexpr double kDualityTorusC = 3.0;
inline constexpr double kDualityBmoC = 3.0;

// integral Mg <= C (eta + integral |g| log+ |g| + log(1/eta) |g|_L1).
// Calibrated worst 0.61.
inline constexpr double kWienerC = 2.0;

// bmo_local(f) <= C BMO_torus(f) for mean-zero f. Calibrated worst 1.14.
inline constexpr double kLocalVsTorusC = 3.0;

// |rho|_2 <= C |f|_inf^{1/2} M_2^{1/2} (k = 2 moment interpolation).
// Calibrated worst 1.80.
inline constexpr double kMomentInterpC = 4.0;
// |m2|_{3/2} <= C |f|_inf^{1/3} M_4^{2/3} (k = 4, k' = 2 variant).
// Calibrated worst 0.94.
inline constexpr double kMomentInterp42C = 4.0;

// Along-run bounds: |rho|_inf vs Gamma, |rho|_inf vs Mbar (1 + Q*^2),
// |m2|_inf vs Gamma^2, |m2|_inf vs Mbar (1 + Q*^4), |rho|_2 vs
// sqrt(M2) sqrt(Mbar). Reports use lhs = worst ratio, rhs = 1.
// Calibrated worsts: 0.046, 0.76, 0.0006, 0.22, 1.76.
inline constexpr double kRhoGammaC = 1.0;
inline constexpr double kRhoQstarC = 1.5;
inline constexpr double kM2GammaC = 1.0;
inline constexpr double kM2QstarC = 1.0;
inline constexpr double kRhoL2C = 3.0;

// dE/dt <= C (eps + eta + [log(G^2+G) + log(1+G^2) + log(1/eta)] E).
// Calibrated worst 0.0036.
inline constexpr double kGronwallC = 1.0;

// |dM_k/dt| <= C k |grad phi|_{k+2} M_k^{(k+1)/(k+2)}, k = 2, 3.
// Calibrated worsts 0.14 / 0.12.
inline constexpr double kMomentRateC2 = 2.0;
inline constexpr double kMomentRateC3 = 2.0;

// Seeds: calibration uses 1..10; acceptance re-checks on 101..110.
inline constexpr unsigned kCalibrationSeedLo = 1, kCalibrationSeedHi = 10;
inline constexpr unsigned kFreshSeedLo = 101, kFreshSeedHi = 110;

}  // namespace qnlab::audit

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace qnlab::kern {

/// Kernel backend. The scalar path is the reference implementation; the AVX2
/// path must reproduce it bit for bit (same per-lane operation order, no FMA
/// contraction). Equivalence is enforced by tests/test_kernels.cpp.
enum class Backend { scalar, avx2 };

/// Currently active backend.
Backend active();

/// Force a backend (tests; AVX2 request on unsupported hardware throws).
void set_backend(Backend b);

/// Pick the best supported backend, honoring the QNLAB_SIMD environment
/// variable ("scalar", "avx2", "auto"). Called lazily on first kernel use.
Backend detect_backend();

const char* backend_name(Backend b);

// ---------------------------------------------------------------------------
// Reductions. Deterministic fixed-order summation: 4 interleaved lanes over
// 256-element blocks, block sums combined pairwise. Identical on all backends.
// ---------------------------------------------------------------------------

double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double min_val(const double* x, std::size_t n);
double max_val(const double* x, std::size_t n);

/// sum_i w[i] * (v1[i]^2 + v2[i]^2)
double weighted_speed_sq(const double* w, const double* v1, const double* v2,
                         std::size_t n);

/// max_i (v1[i]-u1[i])^2 + (v2[i]-u2[i])^2
double max_disp_sq(const double* v1, const double* v2, const double* u1,
                   const double* u2, std::size_t n);

// ---------------------------------------------------------------------------
// Elementwise field kernels.
// ---------------------------------------------------------------------------

/// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);
/// x[i] *= a
void scale(double* x, double a, std::size_t n);
/// z[i] = x[i] * y[i]
void mul(const double* x, const double* y, double* z, std::size_t n);
/// dst[i] = max(dst[i], v)   (running-max block update for maximal functions)
void max_update(double* dst, double v, std::size_t n);

// ---------------------------------------------------------------------------
// Particle kernels. Positions live in [-1/2, 1/2); grids are n x n with n a
// power of two, row-major index (ix, iy) -> ix*n + iy.
// ---------------------------------------------------------------------------

/// x[i] += dt * v[i], wrapped back into [-1/2, 1/2).
void drift_wrap(double* x, const double* v, double dt, std::size_t n);

/// Bilinear interpolation of a node-centered field at particle positions.
void interp_bilinear(const double* field, int n_grid, const double* p1,
                     const double* p2, double* out, std::size_t np);

}  // namespace qnlab::kern

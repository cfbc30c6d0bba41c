// AVX2 kernel variants. Compiled with -mavx2 only; selected at runtime when
// the CPU supports it. Lane structure mirrors the scalar reference exactly
// (vector adds are four independent IEEE adds), so results are bit-identical.

#include "kernels_impl.hpp"

#if QNLAB_X86

#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace qnlab::kern::detail {
namespace {

inline double combine(__m256d acc) {
  alignas(32) double l[4];
  _mm256_store_pd(l, acc);
  return (l[0] + l[1]) + (l[2] + l[3]);
}

inline __m256d abs_pd(__m256d x) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, x);
}

double block_sum(const double* x, std::size_t len) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t len4 = len & ~std::size_t(3), i = 0;
  for (; i < len4; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = combine(acc);
  for (; i < len; ++i) s += x[i];
  return s;
}

double block_dot(const double* x, const double* y, std::size_t len) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t len4 = len & ~std::size_t(3), i = 0;
  for (; i < len4; i += 4)
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  double s = combine(acc);
  for (; i < len; ++i) s += x[i] * y[i];
  return s;
}

double block_sum_abs(const double* x, std::size_t len) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t len4 = len & ~std::size_t(3), i = 0;
  for (; i < len4; i += 4)
    acc = _mm256_add_pd(acc, abs_pd(_mm256_loadu_pd(x + i)));
  double s = combine(acc);
  for (; i < len; ++i) s += std::fabs(x[i]);
  return s;
}

double block_speed_sq(const double* w, const double* v1, const double* v2,
                      std::size_t len) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t len4 = len & ~std::size_t(3), i = 0;
  for (; i < len4; i += 4) {
    __m256d a1 = _mm256_loadu_pd(v1 + i);
    __m256d a2 = _mm256_loadu_pd(v2 + i);
    __m256d t = _mm256_add_pd(_mm256_mul_pd(a1, a1), _mm256_mul_pd(a2, a2));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), t));
  }
  double s = combine(acc);
  for (; i < len; ++i) s += w[i] * (v1[i] * v1[i] + v2[i] * v2[i]);
  return s;
}

double sum_impl(const double* x, std::size_t n) {
  return reduce_pairwise(n, [&](std::size_t off, std::size_t len) {
    return block_sum(x + off, len);
  });
}

double dot_impl(const double* x, const double* y, std::size_t n) {
  return reduce_pairwise(n, [&](std::size_t off, std::size_t len) {
    return block_dot(x + off, y + off, len);
  });
}

double sum_abs_impl(const double* x, std::size_t n) {
  return reduce_pairwise(n, [&](std::size_t off, std::size_t len) {
    return block_sum_abs(x + off, len);
  });
}

double max_abs_impl(const double* x, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t n4 = n & ~std::size_t(3), i = 0;
  for (; i < n4; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(x + i)));
  alignas(32) double l[4];
  _mm256_store_pd(l, m);
  double s = std::max(std::max(l[0], l[1]), std::max(l[2], l[3]));
  for (; i < n; ++i) s = std::max(s, std::fabs(x[i]));
  return s;
}

double min_val_impl(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  double s = x[0];
  std::size_t n4 = n & ~std::size_t(3), i = 0;
  if (n4 >= 4) {
    __m256d m = _mm256_loadu_pd(x);
    for (i = 4; i < n4; i += 4) m = _mm256_min_pd(m, _mm256_loadu_pd(x + i));
    alignas(32) double l[4];
    _mm256_store_pd(l, m);
    s = std::min(std::min(l[0], l[1]), std::min(l[2], l[3]));
  }
  for (; i < n; ++i) s = std::min(s, x[i]);
  return s;
}

double max_val_impl(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  double s = x[0];
  std::size_t n4 = n & ~std::size_t(3), i = 0;
  if (n4 >= 4) {
    __m256d m = _mm256_loadu_pd(x);
    for (i = 4; i < n4; i += 4) m = _mm256_max_pd(m, _mm256_loadu_pd(x + i));
    alignas(32) double l[4];
    _mm256_store_pd(l, m);
    s = std::max(std::max(l[0], l[1]), std::max(l[2], l[3]));
  }
  for (; i < n; ++i) s = std::max(s, x[i]);
  return s;
}

double weighted_speed_sq_impl(const double* w, const double* v1,
                              const double* v2, std::size_t n) {
  return reduce_pairwise(n, [&](std::size_t off, std::size_t len) {
    return block_speed_sq(w + off, v1 + off, v2 + off, len);
  });
}

double max_disp_sq_impl(const double* v1, const double* v2, const double* u1,
                        const double* u2, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t n4 = n & ~std::size_t(3), i = 0;
  for (; i < n4; i += 4) {
    __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(v1 + i), _mm256_loadu_pd(u1 + i));
    __m256d d2 = _mm256_sub_pd(_mm256_loadu_pd(v2 + i), _mm256_loadu_pd(u2 + i));
    m = _mm256_max_pd(
        m, _mm256_add_pd(_mm256_mul_pd(d1, d1), _mm256_mul_pd(d2, d2)));
  }
  alignas(32) double l[4];
  _mm256_store_pd(l, m);
  double s = std::max(std::max(l[0], l[1]), std::max(l[2], l[3]));
  for (; i < n; ++i) {
    double d1 = v1[i] - u1[i];
    double d2 = v2[i] - u2[i];
    s = std::max(s, d1 * d1 + d2 * d2);
  }
  return s;
}

void axpy_impl(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t n4 = n & ~std::size_t(3), i = 0;
  for (; i < n4; i += 4)
    _mm256_storeu_pd(
        y + i, _mm256_add_pd(_mm256_loadu_pd(y + i),
                             _mm256_mul_pd(av, _mm256_loadu_pd(x + i))));
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_impl(double* x, double a, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t n4 = n & ~std::size_t(3), i = 0;
  for (; i < n4; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), av));
  for (; i < n; ++i) x[i] *= a;
}

void mul_impl(const double* x, const double* y, double* z, std::size_t n) {
  std::size_t n4 = n & ~std::size_t(3), i = 0;
  for (; i < n4; i += 4)
    _mm256_storeu_pd(
        z + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) z[i] = x[i] * y[i];
}

void max_update_impl(double* dst, double v, std::size_t n) {
  const __m256d vv = _mm256_set1_pd(v);
  std::size_t n4 = n & ~std::size_t(3), i = 0;
  for (; i < n4; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_max_pd(_mm256_loadu_pd(dst + i), vv));
  for (; i < n; ++i) dst[i] = std::max(dst[i], v);
}

void drift_wrap_impl(double* x, const double* v, double dt, std::size_t n) {
  const __m256d dtv = _mm256_set1_pd(dt);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d nhalf = _mm256_set1_pd(-0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t n4 = n & ~std::size_t(3), i = 0;
  for (; i < n4; i += 4) {
    __m256d y = _mm256_add_pd(_mm256_loadu_pd(x + i),
                              _mm256_mul_pd(dtv, _mm256_loadu_pd(v + i)));
    __m256d w = _mm256_sub_pd(y, _mm256_floor_pd(_mm256_add_pd(y, half)));
    __m256d lo = _mm256_cmp_pd(w, nhalf, _CMP_LT_OQ);
    w = _mm256_add_pd(w, _mm256_and_pd(lo, one));
    __m256d hi = _mm256_cmp_pd(w, half, _CMP_GE_OQ);
    w = _mm256_sub_pd(w, _mm256_and_pd(hi, one));
    _mm256_storeu_pd(x + i, w);
  }
  for (; i < n; ++i) {
    double y = x[i] + dt * v[i];
    double w = y - std::floor(y + 0.5);
    if (w < -0.5) w += 1.0;
    if (w >= 0.5) w -= 1.0;
    x[i] = w;
  }
}

void interp_bilinear_impl(const double* field, int n_grid, const double* p1,
                          const double* p2, double* out, std::size_t np) {
  const int mask = n_grid - 1;
  const int shift = std::countr_zero(static_cast<unsigned>(n_grid));
  const double nd = static_cast<double>(n_grid);
  const __m256d ndv = _mm256_set1_pd(nd);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m128i maskv = _mm_set1_epi32(mask);
  const __m128i onei = _mm_set1_epi32(1);
  std::size_t np4 = np & ~std::size_t(3), p = 0;
  for (; p < np4; p += 4) {
    __m256d t1 = _mm256_mul_pd(_mm256_add_pd(_mm256_loadu_pd(p1 + p), half), ndv);
    __m256d t2 = _mm256_mul_pd(_mm256_add_pd(_mm256_loadu_pd(p2 + p), half), ndv);
    __m128i i1 = _mm_min_epi32(_mm256_cvttpd_epi32(t1), maskv);
    __m128i i2 = _mm_min_epi32(_mm256_cvttpd_epi32(t2), maskv);
    __m256d a = _mm256_sub_pd(t1, _mm256_cvtepi32_pd(i1));
    __m256d b = _mm256_sub_pd(t2, _mm256_cvtepi32_pd(i2));
    __m128i j1 = _mm_and_si128(_mm_add_epi32(i1, onei), maskv);
    __m128i j2 = _mm_and_si128(_mm_add_epi32(i2, onei), maskv);
    __m128i r0 = _mm_slli_epi32(i1, shift);
    __m128i r1 = _mm_slli_epi32(j1, shift);
    __m256d f00 = _mm256_i32gather_pd(field, _mm_add_epi32(r0, i2), 8);
    __m256d f10 = _mm256_i32gather_pd(field, _mm_add_epi32(r1, i2), 8);
    __m256d f01 = _mm256_i32gather_pd(field, _mm_add_epi32(r0, j2), 8);
    __m256d f11 = _mm256_i32gather_pd(field, _mm_add_epi32(r1, j2), 8);
    __m256d oma = _mm256_sub_pd(one, a);
    __m256d omb = _mm256_sub_pd(one, b);
    __m256d w00 = _mm256_mul_pd(oma, omb);
    __m256d w10 = _mm256_mul_pd(a, omb);
    __m256d w01 = _mm256_mul_pd(oma, b);
    __m256d w11 = _mm256_mul_pd(a, b);
    __m256d r = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(w00, f00), _mm256_mul_pd(w10, f10)),
        _mm256_add_pd(_mm256_mul_pd(w01, f01), _mm256_mul_pd(w11, f11)));
    _mm256_storeu_pd(out + p, r);
  }
  for (; p < np; ++p) {
    double t1 = (p1[p] + 0.5) * nd;
    double t2 = (p2[p] + 0.5) * nd;
    int i1 = std::min(static_cast<int>(t1), mask);
    int i2 = std::min(static_cast<int>(t2), mask);
    double a = t1 - static_cast<double>(i1);
    double b = t2 - static_cast<double>(i2);
    int j1 = (i1 + 1) & mask;
    int j2 = (i2 + 1) & mask;
    double f00 = field[i1 * n_grid + i2];
    double f10 = field[j1 * n_grid + i2];
    double f01 = field[i1 * n_grid + j2];
    double f11 = field[j1 * n_grid + j2];
    double w00 = (1.0 - a) * (1.0 - b);
    double w10 = a * (1.0 - b);
    double w01 = (1.0 - a) * b;
    double w11 = a * b;
    out[p] = (w00 * f00 + w10 * f10) + (w01 * f01 + w11 * f11);
  }
}

}  // namespace

const Vtable& avx2_vtable() {
  static const Vtable vt = {
      sum_impl,       dot_impl,        sum_abs_impl,
      max_abs_impl,   min_val_impl,    max_val_impl,
      weighted_speed_sq_impl,          max_disp_sq_impl,
      axpy_impl,      scale_impl,      mul_impl,
      max_update_impl, drift_wrap_impl, interp_bilinear_impl,
  };
  return vt;
}

}  // namespace qnlab::kern::detail

#endif  // QNLAB_X86

// Scalar reference kernels. These define the bit-exact semantics the SIMD
// backends must reproduce: 4 interleaved accumulator lanes, lane combine
// (l0+l1)+(l2+l3), sequential tail.

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "kernels_impl.hpp"

namespace qnlab::kern::detail {
namespace {

double block_sum(const double* x, std::size_t len) {
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
  std::size_t len4 = len & ~std::size_t(3), i = 0;
  for (; i < len4; i += 4) {
    a0 += x[i];
    a1 += x[i + 1];
    a2 += x[i + 2];
    a3 += x[i + 3];
  }
  double s = (a0 + a1) + (a2 + a3);
  for (; i < len; ++i) s += x[i];
  return s;
}

double block_dot(const double* x, const double* y, std::size_t len) {
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
  std::size_t len4 = len & ~std::size_t(3), i = 0;
  for (; i < len4; i += 4) {
    a0 += x[i] * y[i];
    a1 += x[i + 1] * y[i + 1];
    a2 += x[i + 2] * y[i + 2];
    a3 += x[i + 3] * y[i + 3];
  }
  double s = (a0 + a1) + (a2 + a3);
  for (; i < len; ++i) s += x[i] * y[i];
  return s;
}

double block_sum_abs(const double* x, std::size_t len) {
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
  std::size_t len4 = len & ~std::size_t(3), i = 0;
  for (; i < len4; i += 4) {
    a0 += std::fabs(x[i]);
    a1 += std::fabs(x[i + 1]);
    a2 += std::fabs(x[i + 2]);
    a3 += std::fabs(x[i + 3]);
  }
  double s = (a0 + a1) + (a2 + a3);
  for (; i < len; ++i) s += std::fabs(x[i]);
  return s;
}

double block_speed_sq(const double* w, const double* v1, const double* v2,
                      std::size_t len) {
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
  std::size_t len4 = len & ~std::size_t(3), i = 0;
  for (; i < len4; i += 4) {
    a0 += w[i] * (v1[i] * v1[i] + v2[i] * v2[i]);
    a1 += w[i + 1] * (v1[i + 1] * v1[i + 1] + v2[i + 1] * v2[i + 1]);
    a2 += w[i + 2] * (v1[i + 2] * v1[i + 2] + v2[i + 2] * v2[i + 2]);
    a3 += w[i + 3] * (v1[i + 3] * v1[i + 3] + v2[i + 3] * v2[i + 3]);
  }
  double s = (a0 + a1) + (a2 + a3);
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
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

double min_val_impl(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double max_val_impl(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double weighted_speed_sq_impl(const double* w, const double* v1,
                              const double* v2, std::size_t n) {
  return reduce_pairwise(n, [&](std::size_t off, std::size_t len) {
    return block_speed_sq(w + off, v1 + off, v2 + off, len);
  });
}

double max_disp_sq_impl(const double* v1, const double* v2, const double* u1,
                        const double* u2, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d1 = v1[i] - u1[i];
    double d2 = v2[i] - u2[i];
    m = std::max(m, d1 * d1 + d2 * d2);
  }
  return m;
}

void axpy_impl(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_impl(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void mul_impl(const double* x, const double* y, double* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = x[i] * y[i];
}

void max_update_impl(double* dst, double v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = std::max(dst[i], v);
}

void drift_wrap_impl(double* x, const double* v, double dt, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
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
  const double nd = static_cast<double>(n_grid);
  for (std::size_t p = 0; p < np; ++p) {
    double t1 = (p1[p] + 0.5) * nd;
    double t2 = (p2[p] + 0.5) * nd;
    int i1 = static_cast<int>(t1);
    int i2 = static_cast<int>(t2);
    i1 = std::min(i1, mask);
    i2 = std::min(i2, mask);
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

const Vtable& scalar_vtable() {
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

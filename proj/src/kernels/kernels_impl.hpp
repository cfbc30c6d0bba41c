#pragma once

// Internal kernel plumbing shared by the scalar and AVX2 translation units.
// Both backends reduce through identical block/lane structure so their
// results agree bitwise; only the per-block inner loops differ.

#include <cstddef>
#include <vector>

#if defined(__x86_64__) || defined(_M_X64)
#define QNLAB_X86 1
#else
#define QNLAB_X86 0
#endif

namespace qnlab::kern::detail {

inline constexpr std::size_t kBlock = 256;  // multiple of 4

struct Vtable {
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum_abs)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  double (*min_val)(const double*, std::size_t);
  double (*max_val)(const double*, std::size_t);
  double (*weighted_speed_sq)(const double*, const double*, const double*,
                              std::size_t);
  double (*max_disp_sq)(const double*, const double*, const double*,
                        const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double*, double, std::size_t);
  void (*mul)(const double*, const double*, double*, std::size_t);
  void (*max_update)(double*, double, std::size_t);
  void (*drift_wrap)(double*, const double*, double, std::size_t);
  void (*interp_bilinear)(const double*, int, const double*, const double*,
                          double*, std::size_t);
};

const Vtable& scalar_vtable();
#if QNLAB_X86
const Vtable& avx2_vtable();
#endif

// Pairwise combination of per-block partial sums; order is fixed so the
// result is independent of backend and worker count.
template <class BlockFn>
double reduce_pairwise(std::size_t n, BlockFn block) {
  if (n == 0) return 0.0;
  std::vector<double> partial;
  partial.reserve((n + kBlock - 1) / kBlock);
  for (std::size_t off = 0; off < n; off += kBlock) {
    std::size_t len = (n - off < kBlock) ? (n - off) : kBlock;
    partial.push_back(block(off, len));
  }
  std::size_t m = partial.size();
  while (m > 1) {
    std::size_t half = m / 2;
    for (std::size_t i = 0; i < half; ++i)
      partial[i] = partial[2 * i] + partial[2 * i + 1];
    if (m & 1) {
      partial[half] = partial[m - 1];
      m = half + 1;
    } else {
      m = half;
    }
  }
  return partial[0];
}

}  // namespace qnlab::kern::detail

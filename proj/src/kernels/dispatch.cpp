// Runtime backend selection and public kernel entry points.

#include "qnlab/kernels.hpp"

#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"
#include "qnlab/errors.hpp"

namespace qnlab::kern {
namespace {

bool avx2_supported() {
#if QNLAB_X86 && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

const detail::Vtable* vtable_for(Backend b) {
#if QNLAB_X86
  if (b == Backend::avx2) return &detail::avx2_vtable();
#endif
  return &detail::scalar_vtable();
}

struct State {
  Backend backend;
  const detail::Vtable* vt;
};

State& state() {
  static State s = [] {
    Backend b = detect_backend();
    return State{b, vtable_for(b)};
  }();
  return s;
}

}  // namespace

Backend detect_backend() {
  const char* env = std::getenv("QNLAB_SIMD");
  std::string req = env ? env : "auto";
  if (req == "scalar") return Backend::scalar;
  if (req == "avx2") {
    if (!avx2_supported())
      throw ConfigError("QNLAB_SIMD=avx2 but the CPU lacks AVX2 support");
    return Backend::avx2;
  }
  if (req != "auto" && !req.empty())
    throw ConfigError("unknown QNLAB_SIMD value '" + req +
                      "' (expected scalar, avx2, or auto)");
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend active() { return state().backend; }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_supported())
    throw ConfigError("AVX2 backend requested but the CPU lacks AVX2 support");
  state().backend = b;
  state().vt = vtable_for(b);
}

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

double sum(const double* x, std::size_t n) { return state().vt->sum(x, n); }

double dot(const double* x, const double* y, std::size_t n) {
  return state().vt->dot(x, y, n);
}

double sum_sq(const double* x, std::size_t n) {
  return state().vt->dot(x, x, n);
}

double sum_abs(const double* x, std::size_t n) {
  return state().vt->sum_abs(x, n);
}

double max_abs(const double* x, std::size_t n) {
  return state().vt->max_abs(x, n);
}

double min_val(const double* x, std::size_t n) {
  return state().vt->min_val(x, n);
}

double max_val(const double* x, std::size_t n) {
  return state().vt->max_val(x, n);
}

double weighted_speed_sq(const double* w, const double* v1, const double* v2,
                         std::size_t n) {
  return state().vt->weighted_speed_sq(w, v1, v2, n);
}

double max_disp_sq(const double* v1, const double* v2, const double* u1,
                   const double* u2, std::size_t n) {
  return state().vt->max_disp_sq(v1, v2, u1, u2, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  state().vt->axpy(a, x, y, n);
}

void scale(double* x, double a, std::size_t n) { state().vt->scale(x, a, n); }

void mul(const double* x, const double* y, double* z, std::size_t n) {
  state().vt->mul(x, y, z, n);
}

void max_update(double* dst, double v, std::size_t n) {
  state().vt->max_update(dst, v, n);
}

void drift_wrap(double* x, const double* v, double dt, std::size_t n) {
  state().vt->drift_wrap(x, v, dt, n);
}

void interp_bilinear(const double* field, int n_grid, const double* p1,
                     const double* p2, double* out, std::size_t np) {
  state().vt->interp_bilinear(field, n_grid, p1, p2, out, np);
}

}  // namespace qnlab::kern

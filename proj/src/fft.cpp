#include "qnlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace qnlab {
namespace {

// One cached plan pair per grid size. Plan creation is serialized; execution
// uses the new-array interface on per-call fftw-aligned scratch, which is the
// documented thread-safe path and keeps transforms reentrant.
struct PlanPair {
  int n;
  double* real;
  fftw_complex* cplx;
  fftw_plan fwd, inv;

  explicit PlanPair(int n_) : n(n_) {
    real = fftw_alloc_real(static_cast<std::size_t>(n) * n);
    cplx = fftw_alloc_complex(static_cast<std::size_t>(n) * (n / 2 + 1));
    fwd = fftw_plan_dft_r2c_2d(n, n, real, cplx, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_2d(n, n, cplx, real, FFTW_ESTIMATE);
  }
  ~PlanPair() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(cplx);
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
};

PlanPair& plan_for(int n) {
  static std::mutex mu;
  static std::map<int, PlanPair*> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, new PlanPair(n)).first;
  return *it->second;
}

struct Scratch {
  double* real;
  fftw_complex* cplx;
  explicit Scratch(int n) {
    real = fftw_alloc_real(static_cast<std::size_t>(n) * n);
    cplx = fftw_alloc_complex(static_cast<std::size_t>(n) * (n / 2 + 1));
  }
  ~Scratch() {
    fftw_free(real);
    fftw_free(cplx);
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

}  // namespace

std::size_t spectrum_size(int n) {
  return static_cast<std::size_t>(n) * (n / 2 + 1);
}

Spectrum fft_forward(const ScalarField& f) {
  const int n = f.grid.n;
  PlanPair& p = plan_for(n);
  Scratch s(n);
  for (std::size_t i = 0; i < f.size(); ++i) s.real[i] = f.v[i];
  fftw_execute_dft_r2c(p.fwd, s.real, s.cplx);
  Spectrum out(spectrum_size(n));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = {s.cplx[i][0], s.cplx[i][1]};
  return out;
}

ScalarField fft_inverse(const Spectrum& s, const TorusGrid& grid) {
  const int n = grid.n;
  if (s.size() != spectrum_size(n))
    throw ContractError("spectrum size does not match grid");
  PlanPair& p = plan_for(n);
  Scratch buf(n);
  for (std::size_t i = 0; i < s.size(); ++i) {
    buf.cplx[i][0] = s[i].real();
    buf.cplx[i][1] = s[i].imag();
  }
  fftw_execute_dft_c2r(p.inv, buf.cplx, buf.real);
  ScalarField out(grid);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (std::size_t i = 0; i < out.size(); ++i) out.v[i] = buf.real[i] * scale;
  return out;
}

}  // namespace qnlab

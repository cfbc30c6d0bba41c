#pragma once

// Green function of the negative Laplacian on the torus (zero-mean kernel
// V with V_hat(k) = 1/(4 pi^2 |k|^2)) and its split V = V0 + V1 with
// V1(x) = -(1/2 pi) log|x|. Two evaluators are provided:
//  - GreenSplit: the truncated symmetric Fourier sum with cutoff 4n, the
//    build's nominal algorithm;
//  - EwaldGreen: an exponentially convergent Ewald form, used as an
//    independent oracle and to evaluate the smooth remainder gradient
//    grad V0 (the truncated sum cannot reach the needed accuracy there).

#include <array>

#include "qnlab/errors.hpp"
#include "qnlab/grid.hpp"

namespace qnlab {

struct GreenEval {
  double v;   // periodic Green function, zero mean
  double v0;  // bounded remainder v - v1
  double v1;  // -(1/2 pi) log|x|, nearest-image distance
};

class GreenSplit {
 public:
  explicit GreenSplit(const TorusGrid& grid) : cutoff_(4 * grid.n) {}
  explicit GreenSplit(int cutoff) : cutoff_(cutoff) {}

  /// Evaluate at x != 0 (positions wrapped to [-1/2, 1/2)).
  GreenEval eval(double x1, double x2) const;

  int cutoff() const { return cutoff_; }

 private:
  int cutoff_;  // modes |k|_inf <= cutoff
};

class EwaldGreen {
 public:
  explicit EwaldGreen(double tau = 0.04, int real_images = 3,
                      int fourier_modes = 15)
      : tau_(tau), images_(real_images), modes_(fourier_modes) {}

  GreenEval eval(double x1, double x2) const;

  /// Gradient of the periodic V at x != 0.
  std::array<double, 2> grad_v(double x1, double x2) const;

  /// Gradient of the bounded remainder V0; smooth through x = 0.
  std::array<double, 2> grad_v0(double x1, double x2) const;

 private:
  double tau_;
  int images_, modes_;
};

/// max over the n x n node lattice of |grad V0| (Euclidean norm), via Ewald.
double grad_v0_sup(int n);

}  // namespace qnlab

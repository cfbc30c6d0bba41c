#include "qnlab/green.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace qnlab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kFourPiSq = 4.0 * kPi * kPi;

double wrap(double x) {
  double w = x - std::floor(x + 0.5);
  if (w < -0.5) w += 1.0;
  if (w >= 0.5) w -= 1.0;
  return w;
}

// Exponential integral E1(z) = -Ei(-z), z > 0.
double e1(double z) { return -std::expint(-z); }

}  // namespace

GreenEval GreenSplit::eval(double x1, double x2) const {
  const double w1 = wrap(x1), w2 = wrap(x2);
  const double r = std::hypot(w1, w2);
  if (r == 0.0) throw ContractError("green eval: singular point x = 0");
  const int K = cutoff_;
  double v = 0.0;
  for (int k1 = -K; k1 <= K; ++k1) {
    double acc = 0.0;
    for (int k2 = -K; k2 <= K; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      acc += std::cos(kTwoPi * (k1 * w1 + k2 * w2)) /
             (double(k1) * k1 + double(k2) * k2);
    }
    v += acc;
  }
  v /= kFourPiSq;
  GreenEval out;
  out.v = v;
  out.v1 = -std::log(r) / kTwoPi;
  out.v0 = out.v - out.v1;
  return out;
}

GreenEval EwaldGreen::eval(double x1, double x2) const {
  const double w1 = wrap(x1), w2 = wrap(x2);
  const double r = std::hypot(w1, w2);
  if (r == 0.0) throw ContractError("green eval: singular point x = 0");
  double v = -tau_;
  for (int m1 = -images_; m1 <= images_; ++m1)
    for (int m2 = -images_; m2 <= images_; ++m2) {
      double d1 = w1 + m1, d2 = w2 + m2;
      v += e1((d1 * d1 + d2 * d2) / (4.0 * tau_)) / (4.0 * kPi);
    }
  for (int k1 = -modes_; k1 <= modes_; ++k1)
    for (int k2 = -modes_; k2 <= modes_; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      double ksq = double(k1) * k1 + double(k2) * k2;
      double damp = std::exp(-kFourPiSq * ksq * tau_);
      if (damp == 0.0) continue;
      v += std::cos(kTwoPi * (k1 * w1 + k2 * w2)) * damp / (kFourPiSq * ksq);
    }
  GreenEval out;
  out.v = v;
  out.v1 = -std::log(r) / kTwoPi;
  out.v0 = out.v - out.v1;
  return out;
}

std::array<double, 2> EwaldGreen::grad_v0(double x1, double x2) const {
  const double w1 = wrap(x1), w2 = wrap(x2);
  const double rsq = w1 * w1 + w2 * w2;
  double g1 = 0.0, g2 = 0.0;
  // m = 0 real-space term combined with the log-kernel gradient:
  // (1 - e^{-r^2/4tau}) x / (2 pi r^2), smooth through the origin.
  if (rsq > 0.0) {
    double f = -std::expm1(-rsq / (4.0 * tau_)) / (kTwoPi * rsq);
    g1 += f * w1;
    g2 += f * w2;
  }
  for (int m1 = -images_; m1 <= images_; ++m1)
    for (int m2 = -images_; m2 <= images_; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      double d1 = w1 + m1, d2 = w2 + m2;
      double dsq = d1 * d1 + d2 * d2;
      double f = std::exp(-dsq / (4.0 * tau_)) / (kTwoPi * dsq);
      g1 -= f * d1;
      g2 -= f * d2;
    }
  for (int k1 = -modes_; k1 <= modes_; ++k1)
    for (int k2 = -modes_; k2 <= modes_; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      double ksq = double(k1) * k1 + double(k2) * k2;
      double damp = std::exp(-kFourPiSq * ksq * tau_);
      if (damp == 0.0) continue;
      double f = std::sin(kTwoPi * (k1 * w1 + k2 * w2)) * damp / (kTwoPi * ksq);
      g1 -= f * k1;
      g2 -= f * k2;
    }
  return {g1, g2};
}

std::array<double, 2> EwaldGreen::grad_v(double x1, double x2) const {
  const double w1 = wrap(x1), w2 = wrap(x2);
  const double rsq = w1 * w1 + w2 * w2;
  if (rsq == 0.0) throw ContractError("green grad: singular point x = 0");
  auto g = grad_v0(x1, x2);
  g[0] -= w1 / (kTwoPi * rsq);
  g[1] -= w2 / (kTwoPi * rsq);
  return g;
}

double grad_v0_sup(int n) {
  const EwaldGreen ew;
  const double h = 1.0 / n;
  double best = 0.0;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      auto g = ew.grad_v0(-0.5 + ix * h, -0.5 + iy * h);
      double m = g[0] * g[0] + g[1] * g[1];
      if (m > best) best = m;
    }
  return std::sqrt(best);
}

}  // namespace qnlab

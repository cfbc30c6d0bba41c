#include "qnlab/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qnlab/audit_constants.hpp"
#include "qnlab/spectral.hpp"

namespace qnlab {
namespace {

// Inclusive-exclusive summed-area table over a doubled (2n x 2n) tile so any
// periodic cube sum is a single 4-term lookup; clipped sums use the same
// table restricted to the fundamental tile.
class Sat {
 public:
  Sat(const double* f, int n, bool take_abs)
      : n_(n), s_((2 * n + 1) * (2 * n + 1), 0.0) {
    const int w = 2 * n + 1;
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j) {
        double v = f[(i % n) * n + (j % n)];
        if (take_abs) v = std::fabs(v);
        s_[(i + 1) * w + (j + 1)] =
            v + s_[i * w + (j + 1)] + s_[(i + 1) * w + j] - s_[i * w + j];
      }
  }

  // Sum over rows [a, a+rows) x cols [b, b+cols), staying inside the tile.
  double box(int a, int b, int rows, int cols) const {
    const int w = 2 * n_ + 1;
    return s_[(a + rows) * w + (b + cols)] - s_[a * w + (b + cols)] -
           s_[(a + rows) * w + b] + s_[a * w + b];
  }

 private:
  int n_;
  std::vector<double> s_;
};

}  // namespace

CubeFamily::CubeFamily(int n_) : n(n_) {
  for (int side = n_; side >= 1; side /= 2)
    levels.push_back({side, std::max(side / 2, 1)});
}

CubeFamily::CubeFamily(int n_, int count) : n(n_) {
  CubeFamily full(n_);
  for (int i = 0; i < count && i < static_cast<int>(full.levels.size()); ++i)
    levels.push_back(full.levels[i]);
}

ScalarField maximal(const ScalarField& f, CubeMode mode) {
  return maximal(f, mode, CubeFamily(f.grid.n));
}

ScalarField maximal(const ScalarField& f, CubeMode mode, const CubeFamily& fam) {
  const int n = f.grid.n;
  ScalarField out(f.grid);
  Sat sat(f.data(), n, /*take_abs=*/true);
  double* m = out.data();
  for (const auto& lvl : fam.levels) {
    const int c = lvl.side;
    for (int a = 0; a < n; a += lvl.stride)
      for (int b = 0; b < n; b += lvl.stride) {
        if (mode == CubeMode::periodic) {
          double avg = sat.box(a, b, c, c) / (double(c) * c);
          for (int i = 0; i < c; ++i) {
            int row = (a + i) & (n - 1);
            int len = std::min(c, n - b);
            kern::max_update(m + row * n + b, avg, len);
            if (c > len) kern::max_update(m + row * n, avg, c - len);
          }
        } else {
          int ra = std::min(c, n - a);
          int rb = std::min(c, n - b);
          double avg = sat.box(a, b, ra, rb) / (double(ra) * rb);
          for (int i = 0; i < ra; ++i)
            kern::max_update(m + (a + i) * n + b, avg, rb);
        }
      }
  }
  return out;
}

double bmo_norm(const ScalarField& f, BmoMode mode) {
  return bmo_norm(f, mode, CubeFamily(f.grid.n));
}

double bmo_norm(const ScalarField& f, BmoMode mode, const CubeFamily& fam) {
  const int n = f.grid.n;
  Sat sat(f.data(), n, /*take_abs=*/false);
  const double* v = f.data();
  double sup = 0.0;
  for (const auto& lvl : fam.levels) {
    const int c = lvl.side;
    for (int a = 0; a < n; a += lvl.stride)
      for (int b = 0; b < n; b += lvl.stride) {
        int ra = c, rb = c;
        if (mode == BmoMode::local) {
          ra = std::min(c, n - a);
          rb = std::min(c, n - b);
        }
        double cells = double(ra) * rb;
        double avg = sat.box(a, b, ra, rb) / cells;
        double osc = 0.0;
        for (int i = 0; i < ra; ++i) {
          int row = (a + i) & (n - 1);
          for (int j = 0; j < rb; ++j) {
            int col = (b + j) & (n - 1);
            osc += std::fabs(v[row * n + col] - avg);
          }
        }
        sup = std::max(sup, osc / cells);
      }
  }
  if (mode == BmoMode::local) {
    // The side-2 square around any point of the fundamental square clips to
    // the whole square, so the unit-ball average term is just the |f| mean.
    double l1 = kern::sum_abs(f.data(), f.size()) / double(f.size());
    sup = std::max(sup, l1);
  }
  return sup;
}

NormReport cz_bound_check(const ScalarField& omega) {
  VectorField u = biot_savart(omega);
  VectorField g1 = gradient(u.c1);
  VectorField g2 = gradient(u.c2);
  double lhs = 0.0;
  for (const ScalarField* comp : {&g1.c1, &g1.c2, &g2.c1, &g2.c2})
    lhs = std::max(lhs, bmo_norm(*comp, BmoMode::torus));
  return make_report("cz_bmo", lhs, omega.max_abs(), audit::kCzA);
}

DualityReport duality_check(const ScalarField& f, const ScalarField& g) {
  const double area = f.grid.cell_area();
  // Torus variant applies to the mean-free part of g (BMO is blind to
  // constants, so this is the only version of the pairing that can hold).
  ScalarField gz = g;
  gz.shift(-gz.mean());
  double lhs_t = std::fabs(kern::dot(f.data(), gz.data(), f.size()) * area);
  ScalarField mf_t = maximal(f, CubeMode::periodic);
  double rhs_t = kern::sum(mf_t.data(), mf_t.size()) * area *
                 bmo_norm(g, BmoMode::torus);

  double lhs_l = std::fabs(kern::dot(f.data(), g.data(), f.size()) * area);
  ScalarField mf_l = maximal(f, CubeMode::clipped);
  double rhs_l = kern::sum(mf_l.data(), mf_l.size()) * area *
                 bmo_norm(g, BmoMode::local);

  DualityReport rep;
  rep.torus = make_report("duality_torus", lhs_t, rhs_t, audit::kDualityTorusC);
  rep.local = make_report("duality_local", lhs_l, rhs_l, audit::kDualityBmoC);
  return rep;
}

NormReport wiener_check(const ScalarField& g, double eta) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw ConfigError("wiener_check: eta must lie in (0, 1]");
  const double area = g.grid.cell_area();
  ScalarField mg = maximal(g, CubeMode::periodic);
  double lhs = kern::sum(mg.data(), mg.size()) * area;
  double llog = 0.0, l1 = 0.0;
  for (double x : g.v) {
    double ax = std::fabs(x);
    l1 += ax;
    if (ax > 1.0) llog += ax * std::log(ax);
  }
  double rhs = eta + llog * area + std::log(1.0 / eta) * l1 * area;
  return make_report("wiener", lhs, rhs, audit::kWienerC);
}

}  // namespace qnlab

#pragma once

// Uniform periodic node-centered grid on the torus [-1/2, 1/2)^2 and the
// scalar/vector/tensor field values living on it. Storage is row-major with
// index (ix, iy) -> ix*n + iy; node (ix, iy) sits at (-1/2 + ix*h, -1/2 + iy*h).

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qnlab/errors.hpp"
#include "qnlab/kernels.hpp"

namespace qnlab {

struct TorusGrid {
  int n = 0;     // cells (= nodes) per axis; power of two, >= 8
  double h = 0;  // spacing 1/n

  TorusGrid() = default;
  explicit TorusGrid(int n_) : n(n_), h(1.0 / n_) {
    if (n_ < 8 || (n_ & (n_ - 1)) != 0)
      throw ConfigError("grid size must be a power of two >= 8, got " +
                        std::to_string(n_));
  }

  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  double node(int i) const { return -0.5 + i * h; }
  double cell_area() const { return h * h; }

  friend bool operator==(const TorusGrid& a, const TorusGrid& b) {
    return a.n == b.n;
  }
};

struct ScalarField {
  TorusGrid grid;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(const TorusGrid& g) : grid(g), v(g.size(), 0.0) {}

  double& at(int ix, int iy) { return v[static_cast<std::size_t>(ix) * grid.n + iy]; }
  double at(int ix, int iy) const {
    return v[static_cast<std::size_t>(ix) * grid.n + iy];
  }
  double* data() { return v.data(); }
  const double* data() const { return v.data(); }
  std::size_t size() const { return v.size(); }

  double mean() const { return kern::sum(v.data(), v.size()) / double(v.size()); }
  double max_abs() const { return kern::max_abs(v.data(), v.size()); }
  double min() const { return kern::min_val(v.data(), v.size()); }
  double max() const { return kern::max_val(v.data(), v.size()); }

  /// Grid quadrature of f: h^2 * sum of nodal values.
  double integral() const {
    return kern::sum(v.data(), v.size()) * grid.cell_area();
  }
  /// L2 norm sqrt(h^2 sum f^2).
  double l2_norm() const {
    return std::sqrt(kern::sum_sq(v.data(), v.size()) * grid.cell_area());
  }

  ScalarField& operator+=(const ScalarField& o) {
    kern::axpy(1.0, o.data(), data(), size());
    return *this;
  }
  ScalarField& operator-=(const ScalarField& o) {
    kern::axpy(-1.0, o.data(), data(), size());
    return *this;
  }
  ScalarField& operator*=(double a) {
    kern::scale(data(), a, size());
    return *this;
  }
  void shift(double c) {
    for (auto& x : v) x += c;
  }

  /// Fill from a function of the node position.
  template <class F>
  void fill(F&& f) {
    for (int ix = 0; ix < grid.n; ++ix)
      for (int iy = 0; iy < grid.n; ++iy)
        at(ix, iy) = f(grid.node(ix), grid.node(iy));
  }
};

template <class F>
ScalarField make_field(const TorusGrid& g, F&& f) {
  ScalarField out(g);
  out.fill(f);
  return out;
}

struct VectorField {
  ScalarField c1, c2;

  VectorField() = default;
  explicit VectorField(const TorusGrid& g) : c1(g), c2(g) {}
  VectorField(ScalarField a, ScalarField b) : c1(std::move(a)), c2(std::move(b)) {
    if (!(c1.grid == c2.grid))
      throw ContractError("vector field components on mismatched grids");
  }

  const TorusGrid& grid() const { return c1.grid; }

  /// max over nodes of sqrt(c1^2 + c2^2).
  double max_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < c1.size(); ++i) {
      double s = c1.v[i] * c1.v[i] + c2.v[i] * c2.v[i];
      if (s > m) m = s;
    }
    return std::sqrt(m);
  }

  /// h^2 sum |v|^2.
  double l2_sq() const {
    return (kern::sum_sq(c1.data(), c1.size()) +
            kern::sum_sq(c2.data(), c2.size())) *
           c1.grid.cell_area();
  }
};

struct TensorField {
  ScalarField t11, t12, t21, t22;

  TensorField() = default;
  explicit TensorField(const TorusGrid& g) : t11(g), t12(g), t21(g), t22(g) {}

  const TorusGrid& grid() const { return t11.grid; }

  bool is_symmetric(double tol = 1e-12) const {
    for (std::size_t i = 0; i < t12.size(); ++i)
      if (std::fabs(t12.v[i] - t21.v[i]) > tol) return false;
    return true;
  }
};

}  // namespace qnlab

#pragma once

// Discrete Hardy-Littlewood square maximal function, BMO/bmo norms over a
// dyadic half-stride cube family, and the inequality audits built on them
// (Calderon-Zygmund endpoint, maximal-BMO duality, Wiener L log L bound).

#include <vector>

#include "qnlab/grid.hpp"
#include "qnlab/report.hpp"

namespace qnlab {

/// Axis-aligned squares of dyadic side 2^-j cells (side n >> j), anchored on
/// a half-side stride lattice; every node is covered at every level.
struct CubeFamily {
  struct Level {
    int side;    // cells per cube edge
    int stride;  // anchor spacing, max(side/2, 1)
  };
  int n = 0;
  std::vector<Level> levels;

  explicit CubeFamily(int n);
  /// Coarsest `count` levels only (for refinement-monotonicity checks).
  CubeFamily(int n, int count);
};

enum class CubeMode {
  periodic,  // cubes wrap around the torus
  clipped    // cubes intersected with the fundamental square
};

enum class BmoMode {
  torus,  // sup of mean oscillation over periodic cubes
  local   // clipped cubes plus the unit-ball average term
};

/// Mf(x) = max over family cubes containing x of the cube average of |f|.
ScalarField maximal(const ScalarField& f, CubeMode mode = CubeMode::periodic);
ScalarField maximal(const ScalarField& f, CubeMode mode, const CubeFamily& fam);

double bmo_norm(const ScalarField& f, BmoMode mode);
double bmo_norm(const ScalarField& f, BmoMode mode, const CubeFamily& fam);

/// max over the four components of BMO(grad u), u = biot_savart(omega),
/// against the frozen multiple of |omega|_inf.
NormReport cz_bound_check(const ScalarField& omega);

struct DualityReport {
  NormReport torus;  // |<f, g - mean g>| vs |Mf|_L1 * BMO(g)
  NormReport local;  // |<f, g>| vs |Mf(clipped)|_L1 * bmo(g)
};
DualityReport duality_check(const ScalarField& f, const ScalarField& g);

/// integral of Mg vs eta + integral |g| log+ |g| + log(1/eta) |g|_L1,
/// eta in (0, 1].
NormReport wiener_check(const ScalarField& g, double eta);

}  // namespace qnlab

#pragma once

// Relative (modulated) energy between the kinetic state and the Euler flow,
// its derivative decomposition I1 + I2 + I3, the second-moment tensor of the
// modulated velocity, and the quantitative bounds audited along runs
// (Gamma, force field, density/moment controls, Gronwall form).

#include <vector>

#include "qnlab/euler.hpp"
#include "qnlab/report.hpp"
#include "qnlab/vlasov.hpp"

namespace qnlab {

struct EnergyBreakdown {
  double kinetic = 0.0;  // (1/2) sum_p w_p |xi_p - u(x_p)|^2
  double field = 0.0;    // (eps/2) h^2 sum |grad phi|^2
  double total = 0.0;
};

struct DerivativeBreakdown {
  double i1 = 0.0;  // -sum_p w_p d(u):(xi-u) tensor (xi-u)
  double i2 = 0.0;  // eps h^2 sum d(u):grad phi tensor grad phi
  double i3 = 0.0;  // h^2 sum (A(u).u)(rho - 1)
  double sum = 0.0;
};

struct BoundInputs {
  double eps = 0.1;
  double alpha = 1.0;
  double beta = 1.0;
  double mbar = 1.0;   // scale of the weighted sup/L1 bound on f_0
  double mbold = 0.0;  // (1 + sqrt(mbar)) / eps
};

BoundInputs make_bound_inputs(double eps, double alpha, double beta,
                              double mbar);

/// Throws ContractError if the states' times differ by more than sync_tol.
EnergyBreakdown modulated_energy(const VlasovState& vp, const EulerState& eu,
                                 double sync_tol = 1e-9);

/// Deposited (xi - u) tensor (xi - u) second-moment field; symmetric and
/// positive semidefinite per node, trace integrating to 2x kinetic energy.
TensorField f_tensor(const VlasovState& vp, const EulerState& eu,
                     double sync_tol = 1e-9);

DerivativeBreakdown i_terms(const VlasovState& vp, const EulerState& eu,
                            double sync_tol = 1e-9);

/// Gamma(t) = M + M^3 t^2 (1 + log(1 + M t)), M = mbold. Requires t >= 0.
double gamma_bound(double t, const BoundInputs& in);

struct ForceBound {
  double value = 0.0;        // bound evaluated at the caller's l
  double optimized_l = 0.0;  // 1 / (1 + rho_inf)
  double optimized_value = 0.0;
};

/// (2/eps)|grad V0|_inf + (l/eps)(rho_inf+1) + (1/eps)sqrt|log l|(rho_l2+1).
/// Requires l in (0, 1).
ForceBound force_bound(double rho_inf, double rho_l2, double eps, double l);

/// Per-step record of every audited series (superset of the CSV columns).
struct RunHistory {
  std::vector<double> t;
  std::vector<double> e_total, e_kin, e_field;
  std::vector<double> i1, i2, i3;
  std::vector<double> rho_inf, rho_l2, m2_inf, qstar, gamma;
  std::vector<double> hm1_rho, hm1_j, weak_rho, weak_j;
  std::vector<double> grad_phi_inf, grad_phi_l4, grad_phi_l5;
  std::vector<double> m_2, m_3, m_4, m2_l32;
  std::vector<double> max_u;

  std::size_t size() const { return t.size(); }
};

struct DensityBoundAudit {
  NormReport rho_gamma;   // |rho|_inf <= C Gamma
  NormReport rho_qstar;   // |rho|_inf <= C Mbar (1 + Q*^2)
  NormReport m2_gamma;    // |m2|_inf <= C Gamma^2
  NormReport m2_qstar;    // |m2|_inf <= C Mbar (1 + Q*^4)
  NormReport rho_l2;      // |rho|_2 <= C sqrt(M2) sqrt(Mbar)
};

/// Worst ratio over the recorded series; reports use lhs = ratio, rhs = 1.
DensityBoundAudit density_bound_audit(const RunHistory& h,
                                      const BoundInputs& in);

/// dE/dt (central difference) against the Gronwall-form right-hand side
/// with eta = eps^delta, delta = 1.
NormReport gronwall_audit(const RunHistory& h, const BoundInputs& in);

/// max|grad phi| against the optimized force bound, pointwise in time.
NormReport force_bound_audit(const RunHistory& h, const BoundInputs& in);

/// |dM_k/dt| <= C k |grad phi|_{k+2} M_k^{(k+1)/(k+2)}, k in {2, 3}.
NormReport moment_rate_audit(const RunHistory& h, int k);

/// Moment interpolation with analytic |f|_inf: |rho|_2 vs |f|^{1/2} M2^{1/2}
/// and |m2|_{3/2} vs |f|^{1/3} M4^{2/3}.
NormReport moment_interp_audit(const RunHistory& h, double f_inf);
NormReport moment_interp42_audit(const RunHistory& h, double f_inf);

}  // namespace qnlab

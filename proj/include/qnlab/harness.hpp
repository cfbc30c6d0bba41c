#pragma once

// Run orchestration: plain-text configs, coupled kinetic/Euler runs with
// per-step series capture, audits and report emission (CSV + JSON), epsilon
// sweeps with convergence tables, and log-log rate fitting.

#include <cstdint>
#include <string>
#include <vector>

#include "qnlab/initdata.hpp"
#include "qnlab/modulated.hpp"

namespace qnlab {

struct RunConfig {
  int n = 64;
  int ppc = 16;
  double eps = 0.1;
  double beta = 1.0;
  double alpha = 1.0;
  double k0 = 6.0;
  std::string omega0 = "shear";
  double omega0_amplitude = 1.0;
  double omega0_radius = 0.2;
  std::uint64_t omega0_seed = 7;
  double perturbation = 1.0;  // scales quiet-start jitter and thermal spread
  double t_end = 0.5;
  double dt_factor = 0.2;  // dt = min(dt_factor sqrt(eps), h / (2 max|u0| + 1))
  int kmax = 8;            // weak-convergence probe band
  std::uint64_t seed = 1;
  std::string out_dir = "out/run";
  int checkpoint_every = 0;  // steps between checkpoints; 0 disables
};

/// Parse "key = value" lines; '#' starts a comment, blank lines are skipped.
/// Unknown keys, malformed values, and violated preconditions (power-of-two
/// n, square ppc, k0 > 4, dt_factor in (0, 0.2], positive horizon) raise
/// ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string format_config(const RunConfig& cfg);
void save_config(const RunConfig& cfg, const std::string& path);
void validate_config(const RunConfig& cfg);

/// Every audited inequality of a run, with its frozen constant.
struct AuditSet {
  DensityBoundAudit density;
  NormReport gronwall;
  NormReport force;
  NormReport moment_rate_2;
  NormReport moment_rate_3;
  NormReport moment_interp_rho;
  NormReport moment_interp_m2;
  NormReport yudovich;
  NormReport cz;

  std::vector<NormReport> reports() const;
  bool all_pass() const;
};

struct RunReport {
  RunConfig config;
  double dt = 0.0;
  int steps = 0;
  int euler_substeps_max = 1;  // worst per-step Euler subdivision
  RunHistory history;
  HypothesisReport hypotheses;
  bool audits_run = false;  // audits need >= 3 recorded samples
  AuditSet audits;
  double energy_drift = 0.0;     // relative drift of the conserved energy
  double momentum_drift = 0.0;   // absolute drift of total particle momentum
  double enstrophy_drift = 0.0;  // relative drift of the vorticity L2 norm
  double sup_e = 0.0;            // running suprema over the recorded series
  double sup_hm1_rho = 0.0;
  double sup_hm1_j = 0.0;
  double sup_weak_rho = 0.0;
  double sup_weak_j = 0.0;
  double runtime_seconds = 0.0;
  std::string out_dir;  // directory the artifacts were written to
};

/// Full coupled run: sample data, march both systems, record the series,
/// audit, and write series.csv / euler.csv / summary.json / config.txt (plus
/// optional checkpoints) under cfg.out_dir. Deterministic per (config, seed).
RunReport run_single(const RunConfig& cfg);

struct ConvergenceRow {
  double eps = 0.0;
  double e0 = 0.0;  // modulated energy at t = 0
  double sup_e = 0.0;
  double sup_hm1_rho = 0.0;
  double sup_hm1_j = 0.0;
  double sup_weak_rho = 0.0;
  double sup_weak_j = 0.0;
  double runtime_seconds = 0.0;
  bool complete = false;
  std::string error;  // populated when the row's run failed
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;  // sorted by eps descending
  double monotone_horizon = 0.0;     // largest prefix of [0, t_end] on which
                                     // running-sup E decreases strictly in eps
  bool complete() const;
};

/// One run per epsilon (strictly decreasing, each >= 1e-4); dt follows the
/// sqrt(eps) rule through each row's config. Rows are independent and may run
/// on `workers` threads; outputs land in out_dir/eps_<value>/ and the table
/// in out_dir/sweep.csv. Failed rows are recorded and flag the table
/// incomplete.
ConvergenceTable sweep_epsilon(const RunConfig& base,
                               const std::vector<double>& eps_list,
                               int workers = 1);

/// Least-squares slope of log(column) against log(eps). Columns: "e0",
/// "energy", "hm1_rho", "hm1_j", "weak_rho", "weak_j". Needs >= 3 complete
/// rows (ConfigError) with positive entries (ContractError).
double fit_rate(const ConvergenceTable& table, const std::string& column);

}  // namespace qnlab

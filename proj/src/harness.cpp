#include "qnlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qnlab/harmonic.hpp"
#include "qnlab/io.hpp"
#include "qnlab/spectral.hpp"

namespace qnlab {
namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double_value(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ConfigError("config: bad numeric value for '" + key + "': " + v);
  return out;
}

long long parse_int_value(const std::string& key, const std::string& v) {
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ConfigError("config: bad integer value for '" + key + "': " + v);
  return out;
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ConfigError("config: bad unsigned value for '" + key + "': " + v);
  return out;
}

bool power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

// Grid L^{3/2} norm of a nonnegative field (not part of the {1,2,4,inf}
// lp_norm set).
double l32_norm(const ScalarField& f) {
  double acc = 0.0;
  for (double v : f.v) acc += std::sqrt(std::fabs(v)) * std::fabs(v);
  return std::pow(acc * f.grid.cell_area(), 2.0 / 3.0);
}

double running_max(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

json report_json(const NormReport& r) {
  return json{{"name", r.name},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"constant", r.fitted_constant},
              {"pass", r.pass}};
}

std::string step_name(const char* stem, int step, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%06d.%s", stem, step, ext);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected 'key = value', got: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "n")
      cfg.n = static_cast<int>(parse_int_value(key, val));
    else if (key == "ppc")
      cfg.ppc = static_cast<int>(parse_int_value(key, val));
    else if (key == "eps")
      cfg.eps = parse_double_value(key, val);
    else if (key == "beta")
      cfg.beta = parse_double_value(key, val);
    else if (key == "alpha")
      cfg.alpha = parse_double_value(key, val);
    else if (key == "k0")
      cfg.k0 = parse_double_value(key, val);
    else if (key == "omega0")
      cfg.omega0 = val;
    else if (key == "omega0_amplitude")
      cfg.omega0_amplitude = parse_double_value(key, val);
    else if (key == "omega0_radius")
      cfg.omega0_radius = parse_double_value(key, val);
    else if (key == "omega0_seed")
      cfg.omega0_seed = parse_u64_value(key, val);
    else if (key == "perturbation")
      cfg.perturbation = parse_double_value(key, val);
    else if (key == "t_end")
      cfg.t_end = parse_double_value(key, val);
    else if (key == "dt_factor")
      cfg.dt_factor = parse_double_value(key, val);
    else if (key == "kmax")
      cfg.kmax = static_cast<int>(parse_int_value(key, val));
    else if (key == "seed")
      cfg.seed = parse_u64_value(key, val);
    else if (key == "out_dir")
      cfg.out_dir = val;
    else if (key == "checkpoint_every")
      cfg.checkpoint_every = static_cast<int>(parse_int_value(key, val));
    else
      throw ConfigError("config: unknown key '" + key + "'");
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  return parse_config(read_text(path));
}

std::string format_config(const RunConfig& cfg) {
  std::string out;
  auto kv = [&out](const char* k, const std::string& v) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  };
  kv("n", std::to_string(cfg.n));
  kv("ppc", std::to_string(cfg.ppc));
  kv("eps", format_double(cfg.eps));
  kv("beta", format_double(cfg.beta));
  kv("alpha", format_double(cfg.alpha));
  kv("k0", format_double(cfg.k0));
  kv("omega0", cfg.omega0);
  kv("omega0_amplitude", format_double(cfg.omega0_amplitude));
  kv("omega0_radius", format_double(cfg.omega0_radius));
  kv("omega0_seed", std::to_string(cfg.omega0_seed));
  kv("perturbation", format_double(cfg.perturbation));
  kv("t_end", format_double(cfg.t_end));
  kv("dt_factor", format_double(cfg.dt_factor));
  kv("kmax", std::to_string(cfg.kmax));
  kv("seed", std::to_string(cfg.seed));
  kv("out_dir", cfg.out_dir);
  kv("checkpoint_every", std::to_string(cfg.checkpoint_every));
  return out;
}

void save_config(const RunConfig& cfg, const std::string& path) {
  write_text(path, format_config(cfg));
}

void validate_config(const RunConfig& cfg) {
  if (cfg.n < 8 || !power_of_two(cfg.n))
    throw ConfigError("config: n must be a power of two >= 8");
  int s = static_cast<int>(std::lround(std::sqrt(double(cfg.ppc))));
  if (cfg.ppc < 4 || s * s != cfg.ppc)
    throw ConfigError("config: ppc must be a perfect square >= 4");
  if (!(cfg.eps > 0.0)) throw ConfigError("config: eps must be positive");
  if (!(cfg.beta > 0.0)) throw ConfigError("config: beta must be positive");
  if (!(cfg.alpha > 0.0)) throw ConfigError("config: alpha must be positive");
  if (!(cfg.k0 > 4.0)) throw ConfigError("config: k0 must exceed 4");
  if (cfg.omega0 != "shear" && cfg.omega0 != "eigenpair" &&
      cfg.omega0 != "smoothed_patch" && cfg.omega0 != "random_bounded")
    throw ConfigError("config: unknown omega0 family '" + cfg.omega0 + "'");
  if (!std::isfinite(cfg.omega0_amplitude))
    throw ConfigError("config: omega0_amplitude must be finite");
  if (!(cfg.perturbation >= 0.0))
    throw ConfigError("config: perturbation must be >= 0");
  if (!(cfg.t_end > 0.0)) throw ConfigError("config: t_end must be positive");
  if (!(cfg.dt_factor > 0.0 && cfg.dt_factor <= 0.2))
    throw ConfigError("config: dt_factor must lie in (0, 0.2]");
  if (cfg.kmax < 1 || 3 * cfg.kmax > cfg.n)
    throw ConfigError("config: kmax must lie in [1, n/3]");
  if (cfg.checkpoint_every < 0)
    throw ConfigError("config: checkpoint_every must be >= 0");
  if (cfg.out_dir.empty()) throw ConfigError("config: out_dir must be set");
}

std::vector<NormReport> AuditSet::reports() const {
  return {density.rho_gamma, density.rho_qstar,  density.m2_gamma,
          density.m2_qstar,  density.rho_l2,     gronwall,
          force,             moment_rate_2,      moment_rate_3,
          moment_interp_rho, moment_interp_m2,   yudovich,
          cz};
}

bool AuditSet::all_pass() const {
  for (const NormReport& r : reports())
    if (!r.pass) return false;
  return true;
}

RunReport run_single(const RunConfig& cfg) {
  validate_config(cfg);
  auto clock_start = std::chrono::steady_clock::now();

  TorusGrid grid(cfg.n);
  VorticityInit w0 =
      vorticity_library(cfg.omega0, cfg.omega0_amplitude, cfg.omega0_radius,
                        cfg.omega0_seed, grid);
  WellPreparedSpec spec =
      make_well_prepared(cfg.eps, cfg.beta, w0, cfg.ppc, cfg.seed);
  spec.perturbation = cfg.perturbation;
  ParticleEnsemble ens = sample_well_prepared(spec);

  RunReport rep;
  rep.config = cfg;
  rep.hypotheses = verify_hypotheses(ens, spec, cfg.k0, cfg.alpha);

  VlasovState vp = make_vlasov_state(std::move(ens), grid, cfg.eps);
  EulerState eu = make_euler_state(w0.omega);

  // Time step: sqrt(eps) rule capped by the initial-flow CFL margin; the
  // count is rounded up so the run lands exactly on t_end.
  double dt_rule = std::min(cfg.dt_factor * std::sqrt(cfg.eps),
                            grid.h / (2.0 * eu.u.max_norm() + 1.0));
  int steps = std::max(1, static_cast<int>(std::ceil(cfg.t_end / dt_rule -
                                                     1e-9)));
  const double dt = cfg.t_end / steps;
  rep.dt = dt;
  rep.steps = steps;

  const BoundInputs bounds = make_bound_inputs(
      cfg.eps, cfg.alpha, cfg.beta,
      analytic_mbar(cfg.eps, cfg.beta, cfg.k0, spec.u0.max_norm()));

  RunHistory& h = rep.history;
  std::vector<double> cons_energy, mom1, mom2, enstrophy;
  std::vector<std::vector<double>> euler_rows;

  auto record = [&]() {
    const double t = vp.time;
    h.t.push_back(t);
    EnergyBreakdown eb = modulated_energy(vp, eu);
    h.e_total.push_back(eb.total);
    h.e_kin.push_back(eb.kinetic);
    h.e_field.push_back(eb.field);
    DerivativeBreakdown db = i_terms(vp, eu);
    h.i1.push_back(db.i1);
    h.i2.push_back(db.i2);
    h.i3.push_back(db.i3);
    h.rho_inf.push_back(lp_norm(vp.rho, std::numeric_limits<double>::infinity()));
    h.rho_l2.push_back(lp_norm(vp.rho, 2.0));
    ScalarField m2 = deposit_moment(vp.ens, grid, 2);
    h.m2_inf.push_back(lp_norm(m2, std::numeric_limits<double>::infinity()));
    h.m2_l32.push_back(l32_norm(m2));
    h.qstar.push_back(q_star(vp));
    h.gamma.push_back(gamma_bound(t, bounds));
    ScalarField drho = vp.rho;
    drho.shift(-1.0);
    h.hm1_rho.push_back(h_minus1_norm(drho));
    h.weak_rho.push_back(weak_gap(drho, cfg.kmax));
    VectorField cur = deposit_current(vp.ens, grid);
    ScalarField d1 = cur.c1;
    d1 -= eu.u.c1;
    ScalarField d2 = cur.c2;
    d2 -= eu.u.c2;
    h.hm1_j.push_back(std::hypot(h_minus1_norm(d1), h_minus1_norm(d2)));
    h.weak_j.push_back(std::max(weak_gap(d1, cfg.kmax), weak_gap(d2, cfg.kmax)));
    h.grad_phi_inf.push_back(
        field_lp_norm(vp, std::numeric_limits<double>::infinity()));
    h.grad_phi_l4.push_back(field_lp_norm(vp, 4.0));
    h.grad_phi_l5.push_back(field_lp_norm(vp, 5.0));
    h.m_2.push_back(velocity_moment(vp, 2));
    h.m_3.push_back(velocity_moment(vp, 3));
    h.m_4.push_back(velocity_moment(vp, 4));
    h.max_u.push_back(eu.u.max_norm());

    cons_energy.push_back(total_energy(vp).total);
    mom1.push_back(kern::dot(vp.ens.w.data(), vp.ens.v1.data(), vp.ens.size()));
    mom2.push_back(kern::dot(vp.ens.w.data(), vp.ens.v2.data(), vp.ens.size()));
    double om_l2 = lp_norm(eu.omega, 2.0);
    enstrophy.push_back(om_l2);
    euler_rows.push_back(
        {t, 0.5 * eu.u.l2_sq(), 0.5 * om_l2 * om_l2, lp_norm(eu.omega, 1.0),
         om_l2, lp_norm(eu.omega, 4.0),
         lp_norm(eu.omega, std::numeric_limits<double>::infinity())});
  };

  auto checkpoint = [&](int step) {
    std::string dir = cfg.out_dir + "/checkpoints/";
    write_ensemble(dir + step_name("particles", step, "qnp"), vp.ens);
    write_field(dir + step_name("omega", step, "qnl"), eu.omega);
  };

  record();
  for (int k = 1; k <= steps; ++k) {
    vp = step(vp, dt);
    double remaining = dt;
    int subs = 0;
    while (remaining > 0.0) {
      if (++subs > 10000)
        throw ContractError("run: Euler CFL collapsed (flow blow-up?)");
      double allowed = 0.999 * grid.h / (2.0 * eu.u.max_norm() + 1e-300);
      double sub = std::min(remaining, allowed);
      eu = step_euler(eu, sub);
      remaining -= sub;
    }
    rep.euler_substeps_max = std::max(rep.euler_substeps_max, subs);
    record();
    if (cfg.checkpoint_every > 0 && k % cfg.checkpoint_every == 0)
      checkpoint(k);
  }

  rep.audits_run = h.size() >= 3 && cfg.perturbation == 1.0;
  if (rep.audits_run) {
    rep.audits.density = density_bound_audit(h, bounds);
    rep.audits.gronwall = gronwall_audit(h, bounds);
    rep.audits.force = force_bound_audit(h, bounds);
    rep.audits.moment_rate_2 = moment_rate_audit(h, 2);
    rep.audits.moment_rate_3 = moment_rate_audit(h, 3);
    double f_inf = maxwellian_sup(cfg.eps, cfg.beta);
    rep.audits.moment_interp_rho = moment_interp_audit(h, f_inf);
    rep.audits.moment_interp_m2 = moment_interp42_audit(h, f_inf);
    rep.audits.yudovich =
        yudovich_velocity_bound_check(h.max_u, spec.omega0_inf);
    rep.audits.cz = cz_bound_check(spec.omega0);
  }

  double e0 = cons_energy.front();
  double e_drift = 0.0, m_drift = 0.0, z_drift = 0.0;
  for (std::size_t i = 0; i < cons_energy.size(); ++i) {
    e_drift = std::max(e_drift, std::fabs(cons_energy[i] - e0));
    m_drift = std::max(m_drift, std::hypot(mom1[i] - mom1.front(),
                                           mom2[i] - mom2.front()));
    z_drift = std::max(z_drift, std::fabs(enstrophy[i] - enstrophy.front()));
  }
  rep.energy_drift = e_drift / std::max(std::fabs(e0), 1e-300);
  rep.momentum_drift = m_drift;
  rep.enstrophy_drift =
      z_drift / std::max(std::fabs(enstrophy.front()), 1e-300);

  rep.sup_e = running_max(h.e_total);
  rep.sup_hm1_rho = running_max(h.hm1_rho);
  rep.sup_hm1_j = running_max(h.hm1_j);
  rep.sup_weak_rho = running_max(h.weak_rho);
  rep.sup_weak_j = running_max(h.weak_j);

  // Emit the per-step series; the energy derivative column is a centered
  // difference (one-sided at the ends).
  std::vector<std::vector<double>> rows;
  const std::size_t m = h.size();
  for (std::size_t i = 0; i < m; ++i) {
    double dedt;
    if (m < 2)
      dedt = 0.0;
    else if (i == 0)
      dedt = (h.e_total[1] - h.e_total[0]) / (h.t[1] - h.t[0]);
    else if (i + 1 == m)
      dedt = (h.e_total[m - 1] - h.e_total[m - 2]) /
             (h.t[m - 1] - h.t[m - 2]);
    else
      dedt = (h.e_total[i + 1] - h.e_total[i - 1]) /
             (h.t[i + 1] - h.t[i - 1]);
    rows.push_back({h.t[i], h.e_total[i], h.e_kin[i], h.e_field[i], h.i1[i],
                    h.i2[i], h.i3[i], dedt, h.rho_inf[i], h.rho_l2[i],
                    h.m2_inf[i], h.qstar[i], h.gamma[i], h.hm1_rho[i],
                    h.hm1_j[i], h.weak_rho[i], h.weak_j[i]});
  }
  write_text(cfg.out_dir + "/series.csv",
             csv_table({"t", "E_total", "E_kin", "E_field", "I1", "I2", "I3",
                        "dE_dt_fd", "rho_inf", "rho_l2", "m2_inf", "Qstar",
                        "Gamma", "Hm1_rho", "Hm1_J", "weak_gap_rho",
                        "weak_gap_J"},
                       rows));
  write_text(cfg.out_dir + "/euler.csv",
             csv_table({"t", "energy", "enstrophy", "omega_l1", "omega_l2",
                        "omega_l4", "omega_linf"},
                       euler_rows));
  save_config(cfg, cfg.out_dir + "/config.txt");

  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    clock_start)
          .count();
  rep.out_dir = cfg.out_dir;

  json summary;
  summary["config"] = json::parse("{}");
  {
    json c;
    c["n"] = cfg.n;
    c["ppc"] = cfg.ppc;
    c["eps"] = cfg.eps;
    c["beta"] = cfg.beta;
    c["alpha"] = cfg.alpha;
    c["k0"] = cfg.k0;
    c["omega0"] = cfg.omega0;
    c["omega0_amplitude"] = cfg.omega0_amplitude;
    c["omega0_radius"] = cfg.omega0_radius;
    c["omega0_seed"] = cfg.omega0_seed;
    c["perturbation"] = cfg.perturbation;
    c["t_end"] = cfg.t_end;
    c["dt_factor"] = cfg.dt_factor;
    c["kmax"] = cfg.kmax;
    c["seed"] = cfg.seed;
    c["out_dir"] = cfg.out_dir;
    c["checkpoint_every"] = cfg.checkpoint_every;
    summary["config"] = c;
  }
  summary["dt"] = rep.dt;
  summary["steps"] = rep.steps;
  summary["euler_substeps_max"] = rep.euler_substeps_max;
  summary["runtime_seconds"] = rep.runtime_seconds;
  summary["hypotheses"] = {
      {"h1_mass", rep.hypotheses.h1_mass},
      {"h2_bound", rep.hypotheses.h2_bound},
      {"h3_energy", rep.hypotheses.h3_energy},
      {"h4_vorticity", rep.hypotheses.h4_vorticity},
      {"all", rep.hypotheses.all()},
      {"measured_mass", rep.hypotheses.measured_mass},
      {"mbar", rep.hypotheses.mbar},
      {"measured_energy", rep.hypotheses.measured_energy},
      {"expected_energy", rep.hypotheses.expected_energy},
      {"curl_residual", rep.hypotheses.curl_residual}};
  summary["audits_run"] = rep.audits_run;
  summary["audits"] = json::array();
  if (rep.audits_run) {
    for (const NormReport& r : rep.audits.reports())
      summary["audits"].push_back(report_json(r));
    summary["audits_pass"] = rep.audits.all_pass();
  }
  summary["drifts"] = {{"energy", rep.energy_drift},
                       {"momentum", rep.momentum_drift},
                       {"enstrophy", rep.enstrophy_drift}};
  summary["suprema"] = {{"modulated_energy", rep.sup_e},
                        {"hm1_rho", rep.sup_hm1_rho},
                        {"hm1_j", rep.sup_hm1_j},
                        {"weak_rho", rep.sup_weak_rho},
                        {"weak_j", rep.sup_weak_j}};
  summary["series_csv"] = "series.csv";
  write_text(cfg.out_dir + "/summary.json", summary.dump(2) + "\n");
  return rep;
}

bool ConvergenceTable::complete() const {
  for (const ConvergenceRow& r : rows)
    if (!r.complete) return false;
  return !rows.empty();
}

namespace {

// Largest probe time in [0, t_end] up to which the running supremum of the
// modulated energy decreases strictly across consecutive epsilon rows.
double monotone_prefix(const std::vector<RunHistory>& hists, double t_end) {
  if (hists.size() < 2) return t_end;
  const int probes = 64;
  double horizon = 0.0;
  for (int j = 0; j <= probes; ++j) {
    double tj = t_end * j / probes;
    double prev = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (const RunHistory& h : hists) {
      double sup = 0.0;
      for (std::size_t i = 0; i < h.size() && h.t[i] <= tj * (1.0 + 1e-12);
           ++i)
        sup = std::max(sup, h.e_total[i]);
      if (!(sup < prev)) {
        ok = false;
        break;
      }
      prev = sup;
    }
    if (!ok) break;
    horizon = tj;
  }
  return horizon;
}

}  // namespace

ConvergenceTable sweep_epsilon(const RunConfig& base,
                               const std::vector<double>& eps_list,
                               int workers) {
  if (eps_list.empty()) throw ConfigError("sweep: eps list is empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] >= 1e-4))
      throw ConfigError("sweep: eps values must be >= 1e-4");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw ConfigError("sweep: eps list must be strictly decreasing");
  }
  if (workers < 1) throw ConfigError("sweep: workers must be >= 1");

  const std::size_t nrows = eps_list.size();
  std::vector<ConvergenceRow> rows(nrows);
  std::vector<RunHistory> hists(nrows);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < nrows;) {
      RunConfig cfg = base;
      cfg.eps = eps_list[i];
      cfg.out_dir = base.out_dir + "/eps_" + format_double(eps_list[i]);
      ConvergenceRow row;
      row.eps = eps_list[i];
      try {
        RunReport r = run_single(cfg);
        row.e0 = r.history.e_total.front();
        row.sup_e = r.sup_e;
        row.sup_hm1_rho = r.sup_hm1_rho;
        row.sup_hm1_j = r.sup_hm1_j;
        row.sup_weak_rho = r.sup_weak_rho;
        row.sup_weak_j = r.sup_weak_j;
        row.runtime_seconds = r.runtime_seconds;
        row.complete = true;
        hists[i] = std::move(r.history);
      } catch (const std::exception& e) {
        row.complete = false;
        row.error = e.what();
      }
      rows[i] = std::move(row);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    int count = std::min<std::size_t>(workers, nrows);
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  ConvergenceTable table;
  table.rows = std::move(rows);
  if (table.complete())
    table.monotone_horizon = monotone_prefix(hists, base.t_end);

  std::vector<std::vector<double>> csv_rows;
  for (const ConvergenceRow& r : table.rows)
    csv_rows.push_back({r.eps, r.e0, r.sup_e, r.sup_hm1_rho, r.sup_hm1_j,
                        r.sup_weak_rho, r.sup_weak_j, r.runtime_seconds,
                        r.complete ? 1.0 : 0.0});
  write_text(base.out_dir + "/sweep.csv",
             csv_table({"eps", "E0", "sup_E", "sup_Hm1_rho", "sup_Hm1_J",
                        "sup_weak_rho", "sup_weak_J", "runtime_seconds",
                        "complete"},
                       csv_rows));
  json sj;
  sj["complete"] = table.complete();
  sj["monotone_horizon"] = table.monotone_horizon;
  sj["rows"] = json::array();
  for (const ConvergenceRow& r : table.rows) {
    json row = {{"eps", r.eps},
                {"E0", r.e0},
                {"sup_E", r.sup_e},
                {"sup_Hm1_rho", r.sup_hm1_rho},
                {"sup_Hm1_J", r.sup_hm1_j},
                {"sup_weak_rho", r.sup_weak_rho},
                {"sup_weak_J", r.sup_weak_j},
                {"runtime_seconds", r.runtime_seconds},
                {"complete", r.complete}};
    if (!r.complete) row["error"] = r.error;
    sj["rows"].push_back(row);
  }
  write_text(base.out_dir + "/sweep.json", sj.dump(2) + "\n");
  return table;
}

double fit_rate(const ConvergenceTable& table, const std::string& column) {
  auto pick = [&](const ConvergenceRow& r) -> double {
    if (column == "e0") return r.e0;
    if (column == "energy") return r.sup_e;
    if (column == "hm1_rho") return r.sup_hm1_rho;
    if (column == "hm1_j") return r.sup_hm1_j;
    if (column == "weak_rho") return r.sup_weak_rho;
    if (column == "weak_j") return r.sup_weak_j;
    throw ConfigError("fit_rate: unknown column '" + column + "'");
  };
  std::vector<double> x, y;
  for (const ConvergenceRow& r : table.rows) {
    if (!r.complete) continue;
    double v = pick(r);
    if (!(v > 0.0))
      throw ContractError("fit_rate: column '" + column +
                          "' has a nonpositive entry");
    x.push_back(std::log(r.eps));
    y.push_back(std::log(v));
  }
  if (x.size() < 3)
    throw ConfigError("fit_rate: need at least 3 complete rows");
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= x.size();
  ym /= y.size();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - xm) * (y[i] - ym);
    den += (x[i] - xm) * (x[i] - xm);
  }
  if (!(den > 0.0)) throw ContractError("fit_rate: eps values are degenerate");
  return num / den;
}

}  // namespace qnlab

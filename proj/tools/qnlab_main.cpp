// qnlab command line: run / sweep / report / verify.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical-contract
// violation (failed audit or hypothesis), 4 I/O error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnlab/harness.hpp"
#include "qnlab/io.hpp"

namespace {

using qnlab::ConfigError;
using qnlab::ContractError;
using qnlab::IoError;

// QNLAB_OUT, when set, re-roots relative output directories.
std::string resolve_out(const std::string& dir) {
  const char* root = std::getenv("QNLAB_OUT");
  if (root == nullptr || *root == '\0') return dir;
  std::filesystem::path p(dir);
  if (p.is_absolute()) return dir;
  return (std::filesystem::path(root) / p).string();
}

void print_report(const qnlab::RunReport& rep) {
  std::printf("run: %d steps, dt = %s, %.3f s\n", rep.steps,
              qnlab::format_double(rep.dt).c_str(), rep.runtime_seconds);
  std::printf("  sup E = %.6e   sup Hm1(rho-1) = %.6e   sup Hm1(J-u) = %.6e\n",
              rep.sup_e, rep.sup_hm1_rho, rep.sup_hm1_j);
  std::printf("  drifts: energy %.3e, momentum %.3e, enstrophy %.3e\n",
              rep.energy_drift, rep.momentum_drift, rep.enstrophy_drift);
  if (rep.audits_run) {
    for (const qnlab::NormReport& r : rep.audits.reports())
      std::printf("  audit %-22s ratio %.4f (limit %.4f) %s\n",
                  r.name.c_str(), r.lhs, r.fitted_constant,
                  r.pass ? "pass" : "FAIL");
  } else {
    std::printf("  audits skipped (non-reference data or too few steps)\n");
  }
  std::printf("  outputs: %s\n", rep.out_dir.c_str());
}

void print_hypotheses(const qnlab::HypothesisReport& hy) {
  std::printf("H1 mass/positivity        %s (total mass %.12f)\n",
              hy.h1_mass ? "pass" : "FAIL", hy.measured_mass);
  std::printf("H2 moment bound           %s (Mbar %.6e)\n",
              hy.h2_bound ? "pass" : "FAIL", hy.mbar);
  std::printf("H3 initial energy         %s (measured %.6e, expected %.6e)\n",
              hy.h3_energy ? "pass" : "FAIL", hy.measured_energy,
              hy.expected_energy);
  std::printf("H4 bounded vorticity      %s (|omega0|_inf %.6f, curl residual "
              "%.3e)\n",
              hy.h4_vorticity ? "pass" : "FAIL", hy.omega0_inf,
              hy.curl_residual);
}

int cmd_report(const std::string& dir) {
  namespace fs = std::filesystem;
  std::string resolved = resolve_out(dir);
  fs::path sweep = fs::path(resolved) / "sweep.json";
  fs::path single = fs::path(resolved) / "summary.json";
  if (fs::exists(sweep)) {
    auto j = nlohmann::json::parse(qnlab::read_text(sweep.string()));
    std::printf("sweep: %zu rows, %s, monotone horizon %.4f\n",
                j["rows"].size(),
                j["complete"].get<bool>() ? "complete" : "INCOMPLETE",
                j["monotone_horizon"].get<double>());
    std::printf("%12s %14s %14s %14s %14s\n", "eps", "E0", "sup_E",
                "sup_Hm1_rho", "sup_Hm1_J");
    for (const auto& r : j["rows"]) {
      if (r["complete"].get<bool>())
        std::printf("%12g %14.6e %14.6e %14.6e %14.6e\n",
                    r["eps"].get<double>(), r["E0"].get<double>(),
                    r["sup_E"].get<double>(), r["sup_Hm1_rho"].get<double>(),
                    r["sup_Hm1_J"].get<double>());
      else
        std::printf("%12g   failed: %s\n", r["eps"].get<double>(),
                    r["error"].get<std::string>().c_str());
    }
    return 0;
  }
  if (fs::exists(single)) {
    auto j = nlohmann::json::parse(qnlab::read_text(single.string()));
    std::printf("run summary (%s)\n", resolved.c_str());
    std::printf("  steps %d, dt %g, runtime %.3f s\n", j["steps"].get<int>(),
                j["dt"].get<double>(), j["runtime_seconds"].get<double>());
    std::printf("  hypotheses all pass: %s\n",
                j["hypotheses"]["all"].get<bool>() ? "yes" : "no");
    if (j["audits_run"].get<bool>())
      for (const auto& a : j["audits"])
        std::printf("  audit %-22s ratio %.4f (limit %.4f) %s\n",
                    a["name"].get<std::string>().c_str(),
                    a["lhs"].get<double>(), a["constant"].get<double>(),
                    a["pass"].get<bool>() ? "pass" : "FAIL");
    const auto& d = j["drifts"];
    std::printf("  drifts: energy %.3e, momentum %.3e, enstrophy %.3e\n",
                d["energy"].get<double>(), d["momentum"].get<double>(),
                d["enstrophy"].get<double>());
    return 0;
  }
  throw IoError("report: no sweep.json or summary.json under " + resolved);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qnlab: quasineutral-limit laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_override, report_dir;
  std::uint64_t seed = 0;
  int workers = 1, checkpoint_every = -1;
  double t_end = -1.0;
  std::vector<double> eps_list;

  CLI::App* run = app.add_subcommand("run", "single coupled run");
  run->add_option("config", config_path, "config file")->required();
  CLI::Option* run_seed = run->add_option("--seed", seed, "override seed");
  run->add_option("--out", out_override, "override output directory");
  run->add_option("--checkpoint-every", checkpoint_every,
                  "override checkpoint cadence (steps)");
  CLI::Option* run_tend = run->add_option("--t-end", t_end, "override horizon");

  CLI::App* sweep = app.add_subcommand("sweep", "epsilon sweep");
  sweep->add_option("config", config_path, "config file")->required();
  sweep->add_option("--eps", eps_list, "epsilon values, strictly decreasing")
      ->required();
  CLI::Option* sweep_seed = sweep->add_option("--seed", seed, "override seed");
  sweep->add_option("--out", out_override, "override output directory");
  sweep->add_option("--workers", workers, "parallel rows");
  CLI::Option* sweep_tend =
      sweep->add_option("--t-end", t_end, "override horizon");

  CLI::App* report = app.add_subcommand("report", "summarize an output dir");
  report->add_option("dir", report_dir, "output directory")->required();

  CLI::App* verify = app.add_subcommand("verify", "hypothesis checks only");
  verify->add_option("config", config_path, "config file")->required();
  CLI::Option* verify_seed =
      verify->add_option("--seed", seed, "override seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      qnlab::RunConfig cfg = qnlab::load_config(config_path);
      if (run_seed->count() > 0) cfg.seed = seed;
      if (!out_override.empty()) cfg.out_dir = out_override;
      if (checkpoint_every >= 0) cfg.checkpoint_every = checkpoint_every;
      if (run_tend->count() > 0) cfg.t_end = t_end;
      cfg.out_dir = resolve_out(cfg.out_dir);
      qnlab::RunReport rep = qnlab::run_single(cfg);
      print_report(rep);
      if (rep.audits_run && !rep.audits.all_pass()) {
        std::fprintf(stderr, "error: at least one audit failed\n");
        return 3;
      }
      return 0;
    }
    if (sweep->parsed()) {
      qnlab::RunConfig cfg = qnlab::load_config(config_path);
      if (sweep_seed->count() > 0) cfg.seed = seed;
      if (!out_override.empty()) cfg.out_dir = out_override;
      if (sweep_tend->count() > 0) cfg.t_end = t_end;
      cfg.out_dir = resolve_out(cfg.out_dir);
      qnlab::ConvergenceTable table =
          qnlab::sweep_epsilon(cfg, eps_list, workers);
      std::printf("sweep finished: %zu rows, table at %s/sweep.csv\n",
                  table.rows.size(), cfg.out_dir.c_str());
      if (table.complete() && table.rows.size() >= 3)
        std::printf("fitted energy rate: %.4f (monotone horizon %.4f)\n",
                    qnlab::fit_rate(table, "energy"), table.monotone_horizon);
      if (!table.complete()) {
        for (const qnlab::ConvergenceRow& r : table.rows)
          if (!r.complete)
            std::fprintf(stderr, "eps %g failed: %s\n", r.eps,
                         r.error.c_str());
        return 3;
      }
      return 0;
    }
    if (report->parsed()) return cmd_report(report_dir);
    if (verify->parsed()) {
      qnlab::RunConfig cfg = qnlab::load_config(config_path);
      if (verify_seed->count() > 0) cfg.seed = seed;
      qnlab::TorusGrid grid(cfg.n);
      qnlab::VorticityInit w0 = qnlab::vorticity_library(
          cfg.omega0, cfg.omega0_amplitude, cfg.omega0_radius,
          cfg.omega0_seed, grid);
      qnlab::WellPreparedSpec spec = qnlab::make_well_prepared(
          cfg.eps, cfg.beta, w0, cfg.ppc, cfg.seed);
      spec.perturbation = cfg.perturbation;
      qnlab::ParticleEnsemble ens = qnlab::sample_well_prepared(spec);
      qnlab::HypothesisReport hy =
          qnlab::verify_hypotheses(ens, spec, cfg.k0, cfg.alpha);
      print_hypotheses(hy);
      return hy.all() ? 0 : 3;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ContractError& e) {
    std::fprintf(stderr, "contract violation: %s\n", e.what());
    return 3;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}

/// Serialization and the run harness plumbing: binary snapshot round trips,
/// shortest round-trip double formatting, CSV rendering, config parsing and
/// canonical formatting, validation, and the sweep rate fit.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "qnlab/harness.hpp"
#include "qnlab/io.hpp"
#include "qnlab/particles.hpp"
#include "qnlab/rng.hpp"

using namespace qnlab;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("qnlab_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("field snapshots: binary round trip") {
  TempDir tmp;
  TorusGrid g(16);
  ScalarField f(g);
  for (std::size_t i = 0; i < f.size(); ++i)
    f.v[i] = uniform01(5, i) * 1e3 - 500.0;
  write_field(tmp.file("f.qnl"), f);
  ScalarField back = read_scalar_field(tmp.file("f.qnl"));
  CHECK(back.grid.n == 16);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back.v[i] == f.v[i]);

  VectorField u(g);
  u.c1 = f;
  u.c2.v.assign(g.size(), -2.25);
  write_field(tmp.file("u.qnl"), u);
  VectorField uback = read_vector_field(tmp.file("u.qnl"));
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(uback.c1.v[i] == u.c1.v[i]);
    CHECK(uback.c2.v[i] == u.c2.v[i]);
  }

  // Kind mismatch and missing files are IO errors.
  CHECK_THROWS_AS(read_vector_field(tmp.file("f.qnl")), IoError);
  CHECK_THROWS_AS(read_scalar_field(tmp.file("u.qnl")), IoError);
  CHECK_THROWS_AS(read_scalar_field(tmp.file("absent.qnl")), IoError);

  // Corrupt magic.
  std::string raw = read_text(tmp.file("f.qnl"));
  raw[0] = 'X';
  write_text(tmp.file("bad.qnl"), raw);
  CHECK_THROWS_AS(read_scalar_field(tmp.file("bad.qnl")), IoError);
}

TEST_CASE("ensemble snapshots: binary round trip") {
  TempDir tmp;
  ParticleEnsemble e;
  e.resize(100);
  for (std::size_t p = 0; p < 100; ++p) {
    e.x1[p] = uniform01(7, 6 * p) - 0.5;
    e.x2[p] = uniform01(7, 6 * p + 1) - 0.5;
    e.v1[p] = uniform01(7, 6 * p + 2) * 4 - 2;
    e.v2[p] = uniform01(7, 6 * p + 3) * 4 - 2;
    e.v1_0[p] = e.v1[p];
    e.v2_0[p] = e.v2[p];
    e.w[p] = 0.01;
  }
  write_ensemble(tmp.file("e.qnp"), e);
  ParticleEnsemble back = read_ensemble(tmp.file("e.qnp"));
  CHECK(back.size() == 100);
  for (std::size_t p = 0; p < 100; ++p) {
    CHECK(back.x1[p] == e.x1[p]);
    CHECK(back.x2[p] == e.x2[p]);
    CHECK(back.v1[p] == e.v1[p]);
    CHECK(back.v2[p] == e.v2[p]);
    CHECK(back.v1_0[p] == e.v1_0[p]);
    CHECK(back.w[p] == e.w[p]);
  }
  CHECK_THROWS_AS(read_ensemble(tmp.file("f.absent")), IoError);
}

TEST_CASE("format_double: shortest round trip") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5) == "-2.5");
  const double vals[] = {std::numbers::pi, 1.0 / 3.0, 1e-300, -6.02e23,
                        0.30000000000000004};
  for (double v : vals) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("csv_table: layout") {
  std::string csv = csv_table({"a", "b"}, {{1.0, 2.5}, {-0.25, 1e-3}});
  CHECK(csv == "a,b\n1,2.5\n-0.25,0.001\n");
  CHECK(csv_table({"x"}, {}) == "x\n");
}

TEST_CASE("config: parse, canonical format, round trip") {
  RunConfig base;  // defaults
  std::string text = format_config(base);
  RunConfig parsed = parse_config(text);
  CHECK(parsed.n == base.n);
  CHECK(parsed.ppc == base.ppc);
  CHECK(parsed.eps == base.eps);
  CHECK(parsed.beta == base.beta);
  CHECK(parsed.alpha == base.alpha);
  CHECK(parsed.k0 == base.k0);
  CHECK(parsed.omega0 == base.omega0);
  CHECK(parsed.omega0_amplitude == base.omega0_amplitude);
  CHECK(parsed.omega0_radius == base.omega0_radius);
  CHECK(parsed.omega0_seed == base.omega0_seed);
  CHECK(parsed.perturbation == base.perturbation);
  CHECK(parsed.t_end == base.t_end);
  CHECK(parsed.dt_factor == base.dt_factor);
  CHECK(parsed.kmax == base.kmax);
  CHECK(parsed.seed == base.seed);
  CHECK(parsed.out_dir == base.out_dir);
  CHECK(parsed.checkpoint_every == base.checkpoint_every);
  // Canonical form is a fixed point.
  CHECK(format_config(parsed) == text);

  // Comments, blank lines, and exotic doubles survive.
  RunConfig exotic = parse_config(
      "# comment\n\neps = 0.012345678901234567\nn=128\nomega0 = "
      "random_bounded\n");
  CHECK(exotic.eps == 0.012345678901234567);
  CHECK(exotic.n == 128);
  CHECK(exotic.omega0 == "random_bounded");
  RunConfig re = parse_config(format_config(exotic));
  CHECK(re.eps == exotic.eps);

  CHECK_THROWS_AS(parse_config("frobnicate = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eps = 0.1x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eps\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 3.5\n"), ConfigError);
}

TEST_CASE("config: validation rejects out-of-contract values") {
  RunConfig ok;
  CHECK_NOTHROW(validate_config(ok));
  auto expect_reject = [](auto&& mutate) {
    RunConfig c;
    mutate(c);
    CHECK_THROWS_AS(validate_config(c), ConfigError);
  };
  expect_reject([](RunConfig& c) { c.n = 48; });
  expect_reject([](RunConfig& c) { c.n = 4; });
  expect_reject([](RunConfig& c) { c.ppc = 15; });
  expect_reject([](RunConfig& c) { c.eps = 0.0; });
  expect_reject([](RunConfig& c) { c.beta = -1.0; });
  expect_reject([](RunConfig& c) { c.alpha = 0.0; });
  expect_reject([](RunConfig& c) { c.k0 = 4.0; });
  expect_reject([](RunConfig& c) { c.omega0 = "square_vortex"; });
  expect_reject([](RunConfig& c) { c.perturbation = -0.1; });
  expect_reject([](RunConfig& c) { c.t_end = 0.0; });
  expect_reject([](RunConfig& c) { c.dt_factor = 0.3; });
  expect_reject([](RunConfig& c) { c.dt_factor = 0.0; });
  expect_reject([](RunConfig& c) { c.kmax = 0; });
  expect_reject([](RunConfig& c) { c.kmax = c.n; });
  expect_reject([](RunConfig& c) { c.checkpoint_every = -1; });
  expect_reject([](RunConfig& c) { c.out_dir = ""; });
}

TEST_CASE("config: save and load files") {
  TempDir tmp;
  RunConfig c;
  c.eps = 0.05;
  c.out_dir = "elsewhere";
  save_config(c, tmp.file("run.cfg"));
  RunConfig back = load_config(tmp.file("run.cfg"));
  CHECK(back.eps == 0.05);
  CHECK(back.out_dir == "elsewhere");
  CHECK_THROWS_AS(load_config(tmp.file("missing.cfg")), IoError);
}

TEST_CASE("fit_rate: exact power laws and input contracts") {
  ConvergenceTable t;
  for (double eps : {0.1, 0.05, 0.025, 0.0125}) {
    ConvergenceRow r;
    r.eps = eps;
    r.e0 = 3.0 * eps;                 // slope 1
    r.sup_e = 2.0 * std::pow(eps, 0.7);  // slope 0.7
    r.sup_hm1_rho = eps * eps;        // slope 2
    r.complete = true;
    t.rows.push_back(r);
  }
  CHECK(fit_rate(t, "e0") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit_rate(t, "energy") == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fit_rate(t, "hm1_rho") == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_rate(t, "no_such_column"), ConfigError);

  // Fewer than three complete rows cannot support a fit.
  ConvergenceTable small = t;
  small.rows.resize(2);
  CHECK_THROWS_AS(fit_rate(small, "e0"), ConfigError);
  ConvergenceTable broken = t;
  for (auto& r : broken.rows) r.complete = false;
  CHECK_THROWS_AS(fit_rate(broken, "e0"), ConfigError);

  // Nonpositive samples cannot be log-fit.
  ConvergenceTable neg = t;
  neg.rows[1].e0 = 0.0;
  CHECK_THROWS_AS(fit_rate(neg, "e0"), ContractError);
}

TEST_CASE("counter rng: gaussian pair moments") {
  // Statistical sanity for the Box-Muller pair used by the sampler.
  double s = 0.0, s2 = 0.0, cross = 0.0;
  const int trials = 200000;
  for (int i = 0; i < trials; ++i) {
    double g1 = 0.0, g2 = 0.0;
    gauss_pair(99, 2 * static_cast<std::uint64_t>(i), &g1, &g2);
    s += g1 + g2;
    s2 += g1 * g1 + g2 * g2;
    cross += g1 * g2;
  }
  CHECK(std::fabs(s / (2 * trials)) < 0.01);
  CHECK(s2 / (2 * trials) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::fabs(cross / trials) < 0.02);
}

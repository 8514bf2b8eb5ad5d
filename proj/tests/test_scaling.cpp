#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <sstream>

#include "magstrict/scaling.hpp"

using namespace magstrict;

TEST_CASE("nondimensional groups") {
  PhysicalParams pp;
  pp.A = 2e-11;
  pp.Ka = 3e4;
  pp.c44 = 1e11;
  pp.lambda111 = 4e-5;
  pp.Kd = 7e5;
  const double s = pp.c44 * pp.lambda111 * pp.lambda111;
  const ModelParams p = nondimensionalize(pp);
  CHECK(p.mu * p.eta == doctest::Approx(pp.A / s));
  CHECK(p.mu / p.eta == doctest::Approx(pp.Ka / s));
  CHECK(p.kd_scale == doctest::Approx(pp.Kd / s));
  pp.L = 1e-6;  // eta and mu both scale like 1 / L
  const ModelParams q = nondimensionalize(pp);
  CHECK(q.eta == doctest::Approx(p.eta * 1e6));
  CHECK(q.mu == doctest::Approx(p.mu * 1e6));
  pp.Ka = -1;
  CHECK_THROWS_AS(nondimensionalize(pp), std::invalid_argument);
}

TEST_CASE("exponent fit") {
  std::vector<double> mu, e;
  for (int i = 0; i < 6; ++i) {
    mu.push_back(1e-4 * std::pow(10.0, i * 0.4));
    e.push_back(3.0 * std::pow(mu.back(), 2.0 / 3.0));
  }
  const Fit f = fit_exponent(mu, e);
  CHECK(f.slope == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(f.points == 6);
  CHECK_THROWS_AS(fit_exponent({1e-3, 1e-2}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_exponent({1e-3, 1e-2, 1e-1}, {1.0, -2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("sweep grid rule") {
  CHECK(sweep_grid(4, 4, 128, 4096) == 128);
  CHECK(sweep_grid(6, 6, 128, 4096) == 288);
  CHECK(sweep_grid(28, 29, 128, 4096) == 4088);  // capped: 8 l k = 6496
  CHECK(sweep_grid(64, 64, 128, 4096) == 0);
  for (int k = 1; k < 40; ++k) {
    const int n = sweep_grid(k, k, 128, 4096);
    if (n > 0) {
      CHECK(n % (2 * k) == 0);
      CHECK(k * k <= n / 4);
    }
  }
}

TEST_CASE("small sweep end to end") {
  SweepConfig cfg;
  cfg.mu_list = {1e-2, 4e-3, 1e-4};
  cfg.pad = 2;
  cfg.n_max = 256;
  cfg.landau_n_max = 128;
  cfg.jobs = 2;
  const SweepResult r = run_sweep(cfg);
  CHECK(r.c == doctest::Approx(calibrate_c(128, 2)));
  // One zig-zag and one normal-Landau row per mu, in input order.
  REQUIRE(r.records.size() == 6);
  CHECK(r.records[0].pattern == "zigzag");
  CHECK(r.records[1].pattern == "normal_landau");
  CHECK(r.records[0].mu == 1e-2);
  CHECK(r.records[4].mu == 1e-4);
  CHECK(r.records[4].skipped);  // needs l k > 64
  CHECK(r.records[4].reason.find("unresolvable") == 0);
  for (const auto& rec : r.records) {
    if (rec.skipped) continue;
    CHECK(rec.energies.total ==
          doctest::Approx(rec.energies.exchange_or_wall + rec.energies.magnetostatic + rec.energies.magnetostriction));
  }
  std::ostringstream os;
  write_sweep_csv(os, r.records);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "mu,k,l,n,pad,mode,wall,potential,magnetostatic,magnetostriction,total,seconds,pattern,note");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 6);
  CHECK(os.str().find("nan") != std::string::npos);

  cfg.mu_list = {0.0};
  CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
}

TEST_CASE("mode names and config hash") {
  CHECK(sweep_mode_from_string(to_string(SweepMode::minimize)) == SweepMode::minimize);
  CHECK_THROWS_AS(sweep_mode_from_string("fast"), std::invalid_argument);
  // 64-bit FNV-1a of the bytes {"a":1}.
  CHECK(config_hash(nlohmann::json{{"a", 1}}) == "9c3e82dd6fcae8b1");
  SweepConfig a, b;
  b.pad = 8;
  CHECK(config_hash(nlohmann::json(a)) != config_hash(nlohmann::json(b)));
}

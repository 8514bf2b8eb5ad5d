#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "magstrict/constructions.hpp"
#include "magstrict/relax.hpp"

using namespace magstrict;

namespace {

double pair(const VectorField& a, const VectorField& b) {
  double s = 0;
  for (std::size_t c = 0; c < a.v1.size(); ++c) s += a.v1[c] * b.v1[c] + a.v2[c] * b.v2[c];
  return s;
}

VectorField axpy(const VectorField& v, double t, const VectorField& d) {
  VectorField out = v;
  for (std::size_t c = 0; c < v.v1.size(); ++c) {
    out.v1[c] += t * d.v1[c];
    out.v2[c] += t * d.v2[c];
  }
  return out;
}

}  // namespace

TEST_CASE("gradient of F_eta matches central differences") {
  const GridSpec spec(16, 4);
  ModelParams p;
  p.mu = 0.05;
  p.eta = 0.2;
  const VectorField v = testing_helpers::random_vector(spec, 12, 0.9);
  const VectorField g = gradient_F_eta(v, p);
  const double h2 = spec.h() * spec.h();
  for (std::uint64_t s = 0; s < 4; ++s) {
    const VectorField d = testing_helpers::random_vector(spec, 100 + s);
    const double t = 1e-4;
    const double fd = (evaluate_F_eta(axpy(v, t, d), p, nullptr).total -
                       evaluate_F_eta(axpy(v, -t, d), p, nullptr).total) / (2 * t);
    CHECK(fd == doctest::Approx(h2 * pair(g, d)).epsilon(1e-6));
  }
  // Per term, so a compensating error cannot hide.
  const VectorField d = testing_helpers::random_vector(spec, 7);
  const double t = 1e-4;
  auto fd_of = [&](auto&& term) { return (term(axpy(v, t, d)) - term(axpy(v, -t, d))) / (2 * t); };
  CHECK(fd_of([&](const VectorField& w) { return exchange_diffuse(w, p); }) ==
        doctest::Approx(h2 * pair(exchange_gradient(v, p), d)).epsilon(1e-6));
  CHECK(fd_of([&](const VectorField& w) { return bulk_potential(w, p); }) ==
        doctest::Approx(h2 * pair(potential_gradient(v, p), d)).epsilon(1e-6));
  VectorField gm(spec), ge(spec);
  magnetostatic_with_gradient(v, p, gm);
  magnetostriction_with_gradient(v, ge);
  CHECK(fd_of([&](const VectorField& w) { return magnetostatic_energy(w, p); }) ==
        doctest::Approx(h2 * pair(gm, d)).epsilon(1e-6));
  CHECK(fd_of([&](const VectorField& w) { return magnetostriction_energy(w); }) ==
        doctest::Approx(h2 * pair(ge, d)).epsilon(1e-6));
}

TEST_CASE("descent is monotone within each stage") {
  const GridSpec spec(16, 2);
  ModelParams p;
  p.mu = 0.05;
  MinimizeConfig cfg;
  cfg.max_iters = 40;
  cfg.eta_schedule = {0.25, 0.125};
  const VectorField v0 = random_unit_field(spec, 3);
  const MinimizeResult r = minimize_F_eta(v0, p, cfg);
  REQUIRE(r.trace.size() >= 2);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    if (r.trace[i].eta == r.trace[i - 1].eta) CHECK(r.trace[i].total <= r.trace[i - 1].total);
  }
  CHECK(r.iterations > 0);
  CHECK(r.energy.params.eta == 0.125);
  ModelParams last = p;
  last.eta = 0.125;
  CHECK(r.energy.total == doctest::Approx(total_relaxed(r.field, last).total));
  std::ostringstream os;
  write_trace_csv(os, r.trace);
  CHECK(os.str().rfind("iter,eta,exchange,potential,magnetostatic,magnetostriction,total,step,grad_norm\n", 0) == 0);
}

TEST_CASE("minimization from the zig-zag does not increase the energy") {
  const GridSpec spec(32, 2);
  ModelParams p;
  p.eta = 1.0 / 8.0;
  MinimizeConfig cfg;
  cfg.max_iters = 15;
  const VectorField v0 = to_vector(build_zigzag({2, 2}, spec));
  const MinimizeResult r = minimize_F_eta(v0, p, cfg);
  CHECK(r.energy.total <= total_relaxed(v0, p).total);
}

TEST_CASE("minimizer configuration is validated") {
  const GridSpec spec(32, 2);
  MinimizeConfig cfg;
  CHECK_NOTHROW(cfg.validate(spec));
  cfg.eta_schedule = {0.1, 0.2};
  CHECK_THROWS_AS(cfg.validate(spec), std::invalid_argument);
  cfg.eta_schedule = {0.01};  // below 2 / n
  CHECK_THROWS_AS(cfg.validate(spec), std::invalid_argument);
  cfg = {};
  cfg.grad_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(spec), std::invalid_argument);
  cfg = {};
  cfg.shrink = 1.0;
  CHECK_THROWS_AS(cfg.validate(spec), std::invalid_argument);
  const auto s = MinimizeConfig::default_schedule(128);
  CHECK(s == std::vector<double>{0.125, 0.0625, 0.03125, 2.0 / 128});
  CHECK(MinimizeConfig::default_schedule(32) == std::vector<double>{0.125, 0.0625});
}

TEST_CASE("random unit field") {
  const VectorField v = random_unit_field(GridSpec(16, 2), 9);
  for (std::size_t c = 0; c < v.v1.size(); ++c) {
    CHECK(v.v1[c] * v.v1[c] + v.v2[c] * v.v2[c] == doctest::Approx(1.0));
  }
  CHECK(random_unit_field(GridSpec(16, 2), 9).v1 == v.v1);
}

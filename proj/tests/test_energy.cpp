#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "magstrict/constructions.hpp"
#include "magstrict/energy.hpp"

using namespace magstrict;

namespace {

// g-laminate along x + y that is periodic on G: wells 0 / 1 in bands of
// width n / (2 m) in the index i + j.
SpinField periodic_diagonal_laminate(int n, int m) {
  SpinField f{GridSpec(n, 2)};
  const int w = n / (2 * m);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) f.at(i, j) = ((i + j) / w) % 2 == 0 ? Well::PP : Well::MP;
  return f;
}

}  // namespace

TEST_CASE("parameter validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.mu = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.eta = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.kd_scale = -0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("uniformly magnetized square") {
  ModelParams p;
  const double e8 = magnetostatic_energy(SpinField(GridSpec(128, 8), Well::PP), p);
  const double e16 = magnetostatic_energy(SpinField(GridSpec(128, 16), Well::PP), p);
  CHECK(e8 == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::abs(e16 - e8) / e8 < 0.01);
  // Any unit direction gives the same value by rotation invariance.
  for (int w = 1; w < 4; ++w) {
    CHECK(magnetostatic_energy(SpinField(GridSpec(64, 8), well_from_int(w)), p) ==
          doctest::Approx(magnetostatic_energy(SpinField(GridSpec(64, 8), Well::PP), p)).epsilon(1e-12));
  }
  p.kd_scale = 3.0;
  CHECK(magnetostatic_energy(SpinField(GridSpec(128, 8), Well::PP), p) == doctest::Approx(3.0 * e8));
}

TEST_CASE("magnetostatic energy is quadratic and symmetric") {
  ModelParams p;
  const GridSpec spec(32, 4);
  const VectorField v = testing_helpers::random_vector(spec, 9);
  VectorField v2 = v;
  for (auto& x : v2.v1) x *= 2.0;
  for (auto& x : v2.v2) x *= 2.0;
  const double e = magnetostatic_energy(v, p);
  CHECK(magnetostatic_energy(v2, p) == doctest::Approx(4.0 * e).epsilon(1e-12));
  for (int s = 0; s < kSquareSymmetries; ++s) {
    CHECK(magnetostatic_energy(apply_symmetry(v, s), p) == doctest::Approx(e).epsilon(1e-10));
  }
  CHECK(magnetostatic_energy(VectorField(spec), p) == 0.0);
}

TEST_CASE("exchange and potential closed forms") {
  ModelParams p;
  p.mu = 0.3;
  p.eta = 0.1;
  const int n = 16;
  const GridSpec spec(n, 2);
  VectorField v(spec);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) v.v1[spec.index(i, j)] = spec.xc(i);
  // Linear profile with slope 1: the discrete Dirichlet integral is 1 - 1/n.
  CHECK(exchange_diffuse(v, p) == doctest::Approx(p.mu * p.eta * (1.0 - 1.0 / n)));
  // Potential of the zero field: (mu / eta) * 1.
  CHECK(bulk_potential(VectorField(spec), p) == doctest::Approx(p.mu / p.eta));
  // Zero on the wells.
  const SpinField m = testing_helpers::random_spin(spec, 2);
  CHECK(bulk_potential(to_vector(m), p) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(wall_energy(m, p) == doctest::Approx(p.mu * total_variation(m)));
}

TEST_CASE("compatibility zeros of laminates") {
  const GridSpec spec(64, 2);
  // Axis-normal 90 degree twins are rank-one compatible.
  for (auto pair : {std::pair{Well::PP, Well::MP}, {Well::PP, Well::PM}, {Well::MM, Well::MP}}) {
    const SpinField m = build_stripes(StripeNormal::axis, 5, pair, spec);
    CHECK(magnetostriction_energy(m) < 1e-10);
    CHECK(magnetostriction_energy(apply_symmetry(m, 1)) < 1e-10);
  }
  // 180 degree laminates have constant preferred strain.
  CHECK(magnetostriction_energy(build_stripes(StripeNormal::axis, 5, {Well::PP, Well::MM}, spec)) == 0.0);
  CHECK(magnetostriction_energy(build_uniform(Well::MP, spec)) == 0.0);
}

TEST_CASE("periodic diagonal laminate costs Var(g)") {
  for (int n : {32, 64, 128}) {
    const SpinField m = periodic_diagonal_laminate(n, 4);
    // Only modes with k1 = k2 occur; each carries the weight 1/4 times 4.
    CHECK(magnetostriction_energy(m, Periodization::periodic) == doctest::Approx(0.25).epsilon(1e-12));
  }
  // The free-boundary value differs by boundary layers of relative size O(1/m).
  const double refl = magnetostriction_energy(periodic_diagonal_laminate(128, 8));
  CHECK(refl > 0.2);
  CHECK(refl < 0.25);
}

TEST_CASE("spin and vector evaluations agree on the wells") {
  ModelParams p;
  const SpinField m = testing_helpers::random_spin(GridSpec(24, 4), 21);
  const VectorField v = to_vector(m);
  CHECK(magnetostatic_energy(v, p) == doctest::Approx(magnetostatic_energy(m, p)).epsilon(1e-12));
  CHECK(magnetostriction_energy(v) == doctest::Approx(magnetostriction_energy(m)).epsilon(1e-12));
  const EnergyBreakdown s = total_sharp(m, p);
  CHECK(s.potential == 0.0);
  CHECK(s.total == doctest::Approx(s.exchange_or_wall + s.magnetostatic + s.magnetostriction));
  const EnergyBreakdown r = total_relaxed(v, p);
  CHECK(r.potential == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r.magnetostriction == doctest::Approx(s.magnetostriction).epsilon(1e-12));
}

TEST_CASE("magnetostriction is invariant under the square symmetries") {
  const SpinField m = testing_helpers::random_spin(GridSpec(20, 2), 4);
  const double e = magnetostriction_energy(m);
  for (int s = 0; s < kSquareSymmetries; ++s) {
    CHECK(magnetostriction_energy(apply_symmetry(m, s)) == doctest::Approx(e).epsilon(1e-10));
  }
}

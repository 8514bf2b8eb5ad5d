#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "helpers.hpp"
#include "magstrict/constructions.hpp"
#include "magstrict/diagnostics.hpp"

using namespace magstrict;
using std::numbers::pi;

namespace {

ScalarField mode(int n, double amp, auto&& phase) {
  const GridSpec spec(n, 2);
  ScalarField g(spec);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g.at(i, j) = amp * std::sqrt(2.0) * std::cos(phase(spec.xc(i), spec.xc(j)));
  return g;
}

}  // namespace

TEST_CASE("H^-1 norm of single modes") {
  const double a = 0.7;
  // Periodic mode of integer frequency (3, 0): value a^2 / 9.
  const ScalarField gp = mode(64, a, [](double x, double) { return 2 * pi * 3 * (x + 0.5); });
  CHECK(h_minus1_norm(gp, Periodization::periodic) == doctest::Approx(a * a / 9.0).epsilon(1e-12));
  // Cosine index (3, 2) on the reflected cell: frequency (3, 2) / 2.
  const GridSpec spec(64, 2);
  ScalarField g(spec);
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 64; ++i)
      g.at(i, j) = a * 2.0 * std::cos(pi * 3 * (spec.xc(i) + 0.5)) * std::cos(pi * 2 * (spec.xc(j) + 0.5));
  CHECK(h_minus1_norm(g) == doctest::Approx(a * a / ((9.0 + 4.0) / 4.0)).epsilon(1e-12));
}

TEST_CASE("mixed H^-2 weights") {
  const double a = 0.3;
  const ScalarField g = mode(64, a, [](double x, double y) { return 2 * pi * (2 * (x + 0.5) + 5 * (y + 0.5)); });
  const double w = (2.0 * 5.0) * (2.0 * 5.0) / ((4.0 + 25.0) * (4.0 + 25.0));
  CHECK(mixed_h_minus2(g, Periodization::periodic) == doctest::Approx(w * a * a).epsilon(1e-12));
  // Axis modes carry no weight.
  const ScalarField ax = mode(64, a, [](double x, double) { return 2 * pi * 4 * (x + 0.5); });
  CHECK(mixed_h_minus2(ax, Periodization::periodic) < 1e-28);
  CHECK(mixed_h_minus2(ax) < 1e-28);
}

TEST_CASE("magnetostriction equals four times mixed H^-2 on the wells") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const SpinField m = testing_helpers::random_spin(GridSpec(32, 2), seed);
    const double lhs = magnetostriction_energy(m);
    const double rhs = 4.0 * mixed_h_minus2(g_field(m));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    CHECK(magnetostriction_energy(m, Periodization::periodic) ==
          doctest::Approx(4.0 * mixed_h_minus2(g_field(m), Periodization::periodic)).epsilon(1e-8));
  }
  const SpinField z = build_zigzag({4, 4}, GridSpec(128, 2));
  CHECK(magnetostriction_energy(z) == doctest::Approx(4.0 * mixed_h_minus2(g_field(z))).epsilon(1e-8));
}

TEST_CASE("g and components") {
  const SpinField m = testing_helpers::random_spin(GridSpec(8, 2), 6);
  const ScalarField g = g_field(m);
  const ScalarField gv = g_field(to_vector(m));
  const ScalarField m1 = component(m, Component::m1), m2 = component(m, Component::m2);
  for (std::size_t c = 0; c < g.values.size(); ++c) {
    CHECK(std::abs(g.values[c]) == doctest::Approx(0.5));
    CHECK(gv.values[c] == doctest::Approx(g.values[c]));
    CHECK(m1.values[c] * m2.values[c] == doctest::Approx(g.values[c]));
  }
  CHECK(component(m, Component::g).values == g.values);
}

TEST_CASE("Besov seminorm basic properties") {
  const GridSpec spec(64, 2);
  const BesovReport zero = besov_seminorm(ScalarField(spec, 1.5));
  CHECK(zero.value == 0.0);
  CHECK(zero.j_min == 1);
  CHECK(zero.j_max == 4);
  const ScalarField g = g_field(testing_helpers::random_spin(spec, 1));
  ScalarField g3 = g;
  for (auto& x : g3.values) x *= 3.0;
  const double b = besov_seminorm(g).value;
  CHECK(b > 0.0);
  CHECK(besov_seminorm(g3).value == doctest::Approx(3.0 * b));
  // A single straight interface is smoother than white noise.
  ScalarField step(spec);
  for (int j = 0; j < 64; ++j)
    for (int i = 32; i < 64; ++i) step.at(i, j) = 0.5;
  CHECK(besov_seminorm(step).value < b);
  BesovIndices bad;
  bad.s = 1.5;
  CHECK_THROWS_AS(besov_seminorm(g, bad), std::invalid_argument);
  BesovIndices sup;
  sup.q = std::numeric_limits<double>::infinity();
  CHECK(besov_seminorm(g, sup).value <= b);
}

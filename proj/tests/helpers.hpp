#pragma once

#include <cstdint>
#include <random>

#include "magstrict/grid.hpp"

namespace testing_helpers {

inline magstrict::SpinField random_spin(const magstrict::GridSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(0, 3);
  magstrict::SpinField m(spec);
  for (auto& w : m.values) w = magstrict::well_from_int(d(rng));
  return m;
}

inline magstrict::VectorField random_vector(const magstrict::GridSpec& spec, std::uint64_t seed,
                                            double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-scale, scale);
  magstrict::VectorField v(spec);
  for (std::size_t c = 0; c < spec.cells(); ++c) {
    v.v1[c] = d(rng);
    v.v2[c] = d(rng);
  }
  return v;
}

}  // namespace testing_helpers

#pragma once

// Fourier and difference-quotient diagnostics of g = m1 m2.
//
// Frequencies are counted in cycles per unit length (2 pi dropped). On the
// periodic torus G they are integers; on the reflected torus (period 2)
// the cosine index (p, q) is the frequency (p, q) / 2. Coefficients are
// means over the period cell, so Parseval reads mean(f^2) = sum |f_k|^2.

#include <limits>

#include "magstrict/energy.hpp"
#include "magstrict/grid.hpp"

namespace magstrict {

ScalarField g_field(const SpinField& m);
ScalarField g_field(const VectorField& v);

/// sum_{k != 0} (k1 k2)^2 / |k|^4 |g_k|^2. For on-well m the reflected value
/// times 4 is the magnetostriction energy.
double mixed_h_minus2(const ScalarField& g, Periodization mode = Periodization::reflected);

/// sum_{k != 0} |g_k|^2 / |k|^2.
double h_minus1_norm(const ScalarField& g, Periodization mode = Periodization::reflected);

struct SupportReport {
  bool pass = false;
  double max_axis_mode = 0.0;  // max |g_k| over k1 k2 = 0
};

inline constexpr double kSupportTolerance = 1e-10;

/// Periodic DFT of g on G; passes iff every mode on the axes k1 k2 = 0
/// (including k = 0) is below kSupportTolerance.
SupportReport spectral_support_check(const SpinField& m);

struct BesovIndices {
  double s = 1.0 / 3.0;
  double p = 3.0;
  double q = 6.0;  // std::numeric_limits<double>::infinity() for the sup norm

  /// Throws std::invalid_argument unless 0 < s < 1, p >= 1, q >= 1.
  void validate() const;
};

struct BesovReport {
  double value = 0.0;
  int j_min = 1;  // scales t = 2^-j actually used
  int j_max = 0;
};

/// l^q over t = 2^-j (j = 1 .. log2(n) - 2) of sup_{|z| <= t} ||f(. + z) - f||_{L^p} / t^s,
/// with the difference taken where both points lie in G. The sup runs over
/// grid shifts on a sublattice of step max(1, floor(t n / 8)) cells, which
/// keeps the cost near 200 shifts per scale.
BesovReport besov_seminorm(const ScalarField& f, const BesovIndices& idx = {});

enum class Component { m1, m2, g };
ScalarField component(const SpinField& m, Component c);

}  // namespace magstrict

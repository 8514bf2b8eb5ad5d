#pragma once

// Well-valued pattern generators and the class check M0.

#include <stdexcept>
#include <string>
#include <utility>

#include "magstrict/grid.hpp"

namespace magstrict {

/// Raised when a pattern's length scales cannot be represented on the grid.
class UnresolvableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ZigZagParams {
  int k = 4;  // coarse stripe pairs across G
  int l = 4;  // refinement factor; fine spacing is 1/(l k)

  /// Throws std::invalid_argument for k < 1 or l < 1, UnresolvableError
  /// unless l k <= n/4 and 2k divides n.
  void validate(const GridSpec& spec) const;
};

SpinField build_uniform(Well well, const GridSpec& spec);

enum class StripeNormal { axis, diagonal };

/// Alternating laminate of wells.first / wells.second with k interfaces.
/// The axis laminate varies in x only; the diagonal one in x + y only.
/// Throws UnresolvableError when a stripe would be narrower than 2 cells.
SpinField build_stripes(StripeNormal normal, int k, std::pair<Well, Well> wells, const GridSpec& spec);

/// Landau flux-closure state on the diamond |x| + |y| <= 1/2, whose sides
/// are parallel to the easy axes: k bands of the 180 degree pair (0, 2)
/// stacked across (-1, 1), closed at both ends by triangles of the
/// orthogonal pair (1, 3). The four corner triangles of G carry the well
/// tangent to the adjacent diamond side (labels 1, 3, 0, 2 for the
/// top-right, bottom-left, top-left, bottom-right corners), so the interior
/// is divergence free and only the outer boundary carries charge.
SpinField build_normal_landau(int k, const GridSpec& spec);

/// Two-scale zig-zag Landau state.
///
/// Coarse scale: stripes of g = m1 m2 = +1/2 (wells 0, 2) and -1/2 (wells
/// 3, 1), each 1/(2k) wide, sheared by one full period over the height.
/// The shear makes every row and every column contain equal amounts of
/// both stripe types, so M0 holds exactly, at a magnetostriction cost of
/// order 1/k^2.
///
/// Inside the stripes the sign of m flips across 180 degree walls that run
/// at +45 degrees in the +1/2 stripes and -45 degrees in the -1/2 stripes,
/// so consecutive walls form chevrons. Such walls are free of magnetic
/// charge and leave g unchanged. In the bulk the walls are 1/k apart.
/// In the bands of thickness 1/(2k) at the top and bottom edges they are
/// 1/(l k) apart, which makes the normal component on those edges
/// alternate on the fine scale. Where the chevrons leave through the left
/// and right edges, the cells between consecutive walls form the on-well
/// boundary triangles. No separate corner treatment is applied.
SpinField build_zigzag(const ZigZagParams& p, const GridSpec& spec);

struct M0Report {
  bool pass = false;
  double max_line_integral = 0.0;  // max |row or column sum of g| times h
};

/// Threshold on the line integrals of g.
inline constexpr double kM0Tolerance = 1e-12;

M0Report check_M0(const SpinField& m);

/// mu (k + l) + c / (k l).
double zigzag_model_energy(double mu, double c, int k, int l);

struct KLChoice {
  int k = 1;
  int l = 1;
  double energy = 0.0;
};

/// Minimizes zigzag_model_energy over positive integers in a box around
/// the continuous optimum k = l = (c/mu)^(1/3); ties go to smaller k + l,
/// then smaller k. Throws std::invalid_argument unless mu, c > 0.
KLChoice optimize_kl(double mu, double c);

}  // namespace magstrict

#pragma once

// Discrete fields on the unit square G = (-1/2, 1/2)^2.
//
// All fields are cell-centred on an n x n grid with spacing h = 1/n. Storage
// is row-major with the x index fastest: value(i, j) lives at j * n + i, and
// cell (i, j) has centre (-1/2 + (i + 1/2) h, -1/2 + (j + 1/2) h).

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace magstrict {

struct GridSpec {
  int n = 128;   // cells per side
  int pad = 8;   // zero-extension factor for the stray-field transform

  GridSpec() = default;
  GridSpec(int n_, int pad_ = 8);

  /// Throws std::invalid_argument unless n >= 8, n even, pad >= 2.
  void validate() const;

  [[nodiscard]] std::size_t cells() const { return std::size_t(n) * std::size_t(n); }
  [[nodiscard]] double h() const { return 1.0 / n; }
  [[nodiscard]] double xc(int i) const { return -0.5 + (i + 0.5) / n; }
  [[nodiscard]] std::size_t index(int i, int j) const { return std::size_t(j) * n + i; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// One of the four easy-axis wells K = {(+-1/sqrt2, +-1/sqrt2)}.
///
/// Labels run counter-clockwise, so label + 1 is a 90 degree rotation and
/// label + 2 is the antipodal well:
///   0 -> (+, +)   1 -> (-, +)   2 -> (-, -)   3 -> (+, -)
enum class Well : std::uint8_t { PP = 0, MP = 1, MM = 2, PM = 3 };

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

[[nodiscard]] std::array<double, 2> well_vector(Well w);
/// m1 * m2 for the well: +1/2 for labels 0 and 2, -1/2 for 1 and 3.
[[nodiscard]] double well_product(Well w);
[[nodiscard]] Well rotate(Well w, int quarter_turns);
[[nodiscard]] Well opposite(Well w);
/// Throws std::invalid_argument for values outside 0..3.
[[nodiscard]] Well well_from_int(int label);

struct SpinField {
  GridSpec spec;
  std::vector<Well> values;

  SpinField() = default;
  SpinField(GridSpec s, Well fill = Well::PP);

  [[nodiscard]] Well at(int i, int j) const { return values[spec.index(i, j)]; }
  Well& at(int i, int j) { return values[spec.index(i, j)]; }
};

struct VectorField {
  GridSpec spec;
  std::vector<double> v1, v2;

  VectorField() = default;
  explicit VectorField(GridSpec s);

  /// Throws std::invalid_argument on non-finite entries or size mismatch.
  void validate() const;
};

struct ScalarField {
  GridSpec spec;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(GridSpec s, double fill = 0.0);

  [[nodiscard]] double at(int i, int j) const { return values[spec.index(i, j)]; }
  double& at(int i, int j) { return values[spec.index(i, j)]; }
};

/// Symmetric 2x2 tensor per cell; only (xx, yy, xy) are stored.
struct SymTensorField {
  GridSpec spec;
  std::vector<double> xx, yy, xy;

  SymTensorField() = default;
  explicit SymTensorField(GridSpec s);
};

/// Embeds a well-valued field as an unconstrained vector field.
[[nodiscard]] VectorField to_vector(const SpinField& m);
/// Nearest well per cell (sign pattern of v; zero components count as +).
[[nodiscard]] SpinField project_to_wells(const VectorField& v);

/// eps0(z) = z (x) z - I/2, evaluated cell by cell. On-well input gives
/// zero diagonal and +-1/2 off-diagonal exactly.
[[nodiscard]] SymTensorField preferred_strain(const SpinField& m);
[[nodiscard]] SymTensorField preferred_strain(const VectorField& v);

// Even reflection onto the doubled cell G* = (-1/2, 3/2)^2: first about
// x = 1/2, then about y = 1/2. Output has 2n cells per side (pad is kept).
[[nodiscard]] ScalarField periodize_even(const ScalarField& f);
[[nodiscard]] SymTensorField periodize_even(const SymTensorField& f);

/// Restriction of a doubled-cell field back to G (lower-left n x n block).
[[nodiscard]] ScalarField restrict_to_unit(const ScalarField& f);
[[nodiscard]] SymTensorField restrict_to_unit(const SymTensorField& f);

/// Anisotropic total variation: sum over interior axis-aligned cell edges
/// of |jump of m| times the edge length 1/n.
[[nodiscard]] double total_variation(const SpinField& m);

// The eight symmetries of the square, indexed 0..7: bits select
// (transpose, flip x, flip y) applied in that order. The map acts on
// positions and, as the matching orthogonal matrix, on values.
inline constexpr int kSquareSymmetries = 8;

[[nodiscard]] SpinField apply_symmetry(const SpinField& m, int sym);
[[nodiscard]] VectorField apply_symmetry(const VectorField& v, int sym);
[[nodiscard]] ScalarField apply_symmetry(const ScalarField& f, int sym);
/// Tensors transform as R V R^T.
[[nodiscard]] SymTensorField apply_symmetry(const SymTensorField& f, int sym);
/// The value map of symmetry `sym` acting on a well label.
[[nodiscard]] Well apply_symmetry(Well w, int sym);

}  // namespace magstrict

#pragma once

// Least-squares elastic residual  inf_u  int_G |e(u) - V|^2  for an isotropic
// unit-modulus body, where e(u) is the symmetrized gradient and |.| the
// Frobenius norm (off-diagonal entries counted twice).
//
// Two independent routes are provided:
//   * spectral: V is evenly reflected onto the doubled cell, and each
//     nonzero Fourier mode k is minimized over displacement amplitudes by
//     the 2x2 normal equations  (|k|^2 I + k k^T)/2 w = V(k) k.
//   * direct: bilinear finite elements on G with natural boundary
//     conditions, minimized by preconditioned conjugate gradients.
//
// Multiplier conventions: per-mode quantities are homogeneous of degree 0
// in k, so integer frequencies are used throughout with 2 pi dropped.
// Fourier coefficients are normalized as means over the period cell.

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "magstrict/grid.hpp"

namespace magstrict {

struct Sym2 {
  double xx = 0.0, yy = 0.0, xy = 0.0;
};

struct ElasticSolution {
  VectorField displacement;   // cell-centred samples; empty when not requested
  double residual_energy = 0.0;
  Sym2 mean_strain;
  int iterations = 0;         // CG iterations (direct solver only)
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, double relative_residual)
      : std::runtime_error(what), iterations_(iterations), relative_residual_(relative_residual) {}
  int iterations() const { return iterations_; }
  double relative_residual() const { return relative_residual_; }

 private:
  int iterations_;
  double relative_residual_;
};

namespace elastic {

/// Per-mode least-squares residual ||P_k V||^2 by explicit normal equations.
/// `vxy` is the off-diagonal entry; V is Hermitian (xx, yy real in the
/// real-coefficient case). Works for real or complex coefficients.
template <class T>
double mode_residual(T vxx, T vyy, T vxy, double k1, double k2);

/// The closed-form multiplier
///   (|k|^4 |V|^2 - 2 |k|^2 |V k|^2 + |k . V k|^2) / |k|^4.
template <class T>
double mode_multiplier(T vxx, T vyy, T vxy, double k1, double k2);

extern template double mode_residual<double>(double, double, double, double, double);
extern template double mode_residual<std::complex<double>>(std::complex<double>, std::complex<double>,
                                                           std::complex<double>, double, double);
extern template double mode_multiplier<double>(double, double, double, double, double);
extern template double mode_multiplier<std::complex<double>>(std::complex<double>,
                                                             std::complex<double>,
                                                             std::complex<double>, double, double);

/// Residual on the evenly reflected doubled cell, evaluated with cosine
/// transforms of size n (the reflection makes every coefficient real up to
/// a common phase).
double reflected_residual(const SymTensorField& V);

struct ResidualWithDual {
  double energy = 0.0;
  /// T with  dE = (2/n^2) sum_cells <dV, T>_F  for perturbations dV on G.
  SymTensorField dual;
};
ResidualWithDual reflected_residual_with_dual(const SymTensorField& V);

/// Residual of the unit-cell periodic problem (no reflection): the Fourier
/// formula applied verbatim to the coefficients of V on G itself.
double periodic_residual(const SymTensorField& V);

/// Subtracts the mean and the skew part of the discrete average gradient
/// (an infinitesimal rotation) in place. The average gradient is the
/// row/column mean of (u(last) - u(first)) / ((n - 1) h).
void korn_normalize(VectorField& u);
/// The discrete average gradient used by korn_normalize, as [d_i u_j].
std::array<std::array<double, 2>, 2> average_gradient(const VectorField& u);

}  // namespace elastic

/// Spectral minimizer on the reflected doubled cell. The k = 0 mode is the
/// mean strain (no energy). With `with_displacement`, also reconstructs u
/// on G (periodic part plus mean_strain x), Korn-normalized.
ElasticSolution solve_spectral(const SymTensorField& V, bool with_displacement = true);

/// Finite-element oracle on G with natural boundary conditions. Throws
/// ConvergenceError when the relative residual stays above `tol` after
/// `max_iters` CG iterations.
ElasticSolution solve_direct(const SymTensorField& V, double tol = 1e-10, int max_iters = 50000);

struct UnitCellReport {
  double unit_cell = 0.0;  // formula with non-reflected coefficients
  double spectral = 0.0;   // reflected computation
  double direct = 0.0;     // finite-element oracle
  double deviation_spectral = 0.0;  // |unit_cell - spectral|
  double deviation_direct = 0.0;    // |unit_cell - direct|
};

/// Smooth test tensor: each component is a sum of products
/// a sin(2 pi p x + phi) sin(2 pi q y + psi) over 1 <= p, q <= modes with
/// uniform random amplitudes in [-1, 1] and phases; deterministic in seed.
SymTensorField random_smooth_tensor(const GridSpec& spec, std::uint64_t seed, int modes = 3);

UnitCellReport unit_cell_formula_check(const SymTensorField& V, double direct_tol = 1e-10);

}  // namespace magstrict

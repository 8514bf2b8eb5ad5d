#pragma once

// Terms of the relaxed energy F_eta and the sharp-interface energy F_0 on G.
//
// Normalizations: integrals over G use cell area h^2; homogeneous Fourier
// multipliers use integer frequencies with 2 pi cancelled. Every term is
// pinned by a closed-form case in the tests rather than by convention alone.

#include <string>

#include <json.hpp>

#include "magstrict/grid.hpp"

namespace magstrict {

struct ModelParams {
  double mu = 1e-2;
  double eta = 1.0 / 32.0;
  double kd_scale = 1.0;

  /// Throws std::invalid_argument unless mu > 0, eta > 0, kd_scale >= 0.
  void validate() const;
};

struct EnergyBreakdown {
  double exchange_or_wall = 0.0;
  double potential = 0.0;
  double magnetostatic = 0.0;
  double magnetostriction = 0.0;
  double total = 0.0;
  ModelParams params;

  void update_total() { total = exchange_or_wall + potential + magnetostatic + magnetostriction; }
};

void to_json(nlohmann::json& j, const ModelParams& p);
void from_json(const nlohmann::json& j, ModelParams& p);
void to_json(nlohmann::json& j, const EnergyBreakdown& e);

/// How the elastic problem on G is closed: even reflection onto the doubled
/// cell (the physical, free-boundary setting), or G treated as a unit cell
/// of a periodic body.
enum class Periodization { reflected, periodic };

/// mu * eta * sum over interior cell edges of |v(a) - v(b)|^2; this is the
/// discrete integral of |grad v|^2 with natural boundary conditions.
double exchange_diffuse(const VectorField& v, const ModelParams& p);

/// (mu / eta) * h^2 * sum of (|v|^2 - 1)^2 + (v1^2 - v2^2)^2.
double bulk_potential(const VectorField& v, const ModelParams& p);

/// mu * total_variation(m).
double wall_energy(const SpinField& m, const ModelParams& p);

/// kd_scale * ||div f||^2 in H^-1(R^2), f extended by zero, truncated to the
/// (pad n)^2 torus. The k = 0 slot carries the isotropic weight 1/2 (the
/// angular mean of the projector), which removes the leading O(pad^-2)
/// truncation error; a uniformly magnetized square then gives exactly 1/2.
double magnetostatic_energy(const VectorField& f, const ModelParams& p);
double magnetostatic_energy(const SpinField& m, const ModelParams& p);

/// min_u int_G |e(u) - eps0(f)|^2.
double magnetostriction_energy(const VectorField& f, Periodization mode = Periodization::reflected);
double magnetostriction_energy(const SpinField& m, Periodization mode = Periodization::reflected);

/// F_eta: exchange, potential, magnetostatic, magnetostriction.
EnergyBreakdown total_relaxed(const VectorField& v, const ModelParams& p);
/// F_0: wall, magnetostatic, magnetostriction; potential slot is 0.
EnergyBreakdown total_sharp(const SpinField& m, const ModelParams& p);

// L^2 gradients (derivative with respect to the cell value divided by the
// cell area h^2), one per term of F_eta.
VectorField exchange_gradient(const VectorField& v, const ModelParams& p);
VectorField potential_gradient(const VectorField& v, const ModelParams& p);
/// Returns the energy and writes the gradient into `grad` (accumulating).
double magnetostatic_with_gradient(const VectorField& f, const ModelParams& p, VectorField& grad);
/// Envelope gradient 4 T v, where T is the cell-space dual of the reflected
/// residual (the folded form of -4 (e(u*) - eps0(v)) v). Accumulates.
double magnetostriction_with_gradient(const VectorField& v, VectorField& grad);

}  // namespace magstrict

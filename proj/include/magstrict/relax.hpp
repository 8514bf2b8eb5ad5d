#pragma once

// Gradient descent on F_eta with Armijo backtracking and eta annealing.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "magstrict/energy.hpp"
#include "magstrict/grid.hpp"

namespace magstrict {

struct MinimizeConfig {
  int max_iters = 200;          // per eta stage
  double grad_tol = 1e-6;       // on the L^2 norm of the gradient
  std::vector<double> eta_schedule;  // empty: use params.eta only
  double armijo = 1e-4;
  double shrink = 0.5;
  double grow = 2.0;            // next trial step is grow * last accepted
  double initial_step = 1e-2;
  int max_backtracks = 40;
  std::uint64_t seed = 0;       // only used by random starts

  /// {1/8, 1/16, 1/32, 2/n}, keeping entries >= 2/n.
  static std::vector<double> default_schedule(int n);

  /// Throws std::invalid_argument on a non-descending schedule, an eta
  /// below 2/n, grad_tol <= 0 or inconsistent backtracking parameters.
  void validate(const GridSpec& spec) const;
};

/// F_eta and its L^2 gradient in one pass.
EnergyBreakdown evaluate_F_eta(const VectorField& v, const ModelParams& p, VectorField* grad);

VectorField gradient_F_eta(const VectorField& v, const ModelParams& p);

struct TraceRow {
  int iter = 0;  // global iteration counter
  double eta = 0.0;
  double exchange = 0.0, potential = 0.0, magnetostatic = 0.0, magnetostriction = 0.0, total = 0.0;
  double step = 0.0;       // accepted step (0 for the first row of a stage)
  double grad_norm = 0.0;
};

struct MinimizeResult {
  VectorField field;
  EnergyBreakdown energy;
  std::vector<TraceRow> trace;
  bool converged = false;          // grad_tol reached in the last stage
  bool line_search_failed = false; // best iterate returned
  int iterations = 0;
};

/// Runs each eta of the schedule in turn, warm-started from the previous
/// stage. Within a stage every accepted step lowers the energy; a violation
/// throws std::logic_error.
MinimizeResult minimize_F_eta(const VectorField& v0, const ModelParams& p, const MinimizeConfig& cfg);

/// Unit vectors with independent uniform angles.
VectorField random_unit_field(const GridSpec& spec, std::uint64_t seed);

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

}  // namespace magstrict

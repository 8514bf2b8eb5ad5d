#include "magstrict/relax.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

namespace magstrict {

std::vector<double> MinimizeConfig::default_schedule(int n) {
  std::vector<double> out;
  const double floor_eta = 2.0 / n;
  for (double e : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
    if (e >= floor_eta) out.push_back(e);
  }
  if (out.empty() || out.back() > floor_eta) out.push_back(floor_eta);
  return out;
}

void MinimizeConfig::validate(const GridSpec& spec) const {
  if (max_iters < 0) throw std::invalid_argument("minimize: max_iters must be >= 0");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("minimize: grad_tol must be > 0");
  if (!(armijo > 0.0 && armijo < 1.0)) throw std::invalid_argument("minimize: armijo must be in (0, 1)");
  if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("minimize: shrink must be in (0, 1)");
  if (!(grow >= 1.0)) throw std::invalid_argument("minimize: grow must be >= 1");
  if (!(initial_step > 0.0)) throw std::invalid_argument("minimize: initial_step must be > 0");
  if (max_backtracks < 1) throw std::invalid_argument("minimize: max_backtracks must be >= 1");
  const double floor_eta = 2.0 / spec.n;
  for (std::size_t i = 0; i < eta_schedule.size(); ++i) {
    // Small slack so that 2/n itself is accepted after a text round trip.
    if (!(eta_schedule[i] >= floor_eta * (1.0 - 1e-12))) {
      throw std::invalid_argument("minimize: eta " + std::to_string(eta_schedule[i]) +
                                  " is below 2/n = " + std::to_string(floor_eta));
    }
    if (i > 0 && !(eta_schedule[i] < eta_schedule[i - 1])) {
      throw std::invalid_argument("minimize: eta schedule must be strictly descending");
    }
  }
}

EnergyBreakdown evaluate_F_eta(const VectorField& v, const ModelParams& p, VectorField* grad) {
  if (grad == nullptr) return total_relaxed(v, p);
  p.validate();
  v.validate();
  EnergyBreakdown e;
  e.params = p;
  e.exchange_or_wall = exchange_diffuse(v, p);
  e.potential = bulk_potential(v, p);
  *grad = exchange_gradient(v, p);
  const VectorField pg = potential_gradient(v, p);
  for (std::size_t c = 0; c < pg.v1.size(); ++c) {
    grad->v1[c] += pg.v1[c];
    grad->v2[c] += pg.v2[c];
  }
  e.magnetostatic = magnetostatic_with_gradient(v, p, *grad);
  e.magnetostriction = magnetostriction_with_gradient(v, *grad);
  e.update_total();
  return e;
}

VectorField gradient_F_eta(const VectorField& v, const ModelParams& p) {
  VectorField g(v.spec);
  evaluate_F_eta(v, p, &g);
  return g;
}

namespace {

double l2_norm_sq(const VectorField& g) {
  double s = 0.0;
  for (std::size_t c = 0; c < g.v1.size(); ++c) s += g.v1[c] * g.v1[c] + g.v2[c] * g.v2[c];
  return s / double(g.spec.cells());
}

TraceRow row(int iter, const EnergyBreakdown& e, double step, double gnorm) {
  return {iter,          e.params.eta, e.exchange_or_wall, e.potential, e.magnetostatic,
          e.magnetostriction, e.total, step,                gnorm};
}

}  // namespace

MinimizeResult minimize_F_eta(const VectorField& v0, const ModelParams& p, const MinimizeConfig& cfg) {
  p.validate();
  v0.validate();
  cfg.validate(v0.spec);
  const std::vector<double> schedule =
      cfg.eta_schedule.empty() ? std::vector<double>{p.eta} : cfg.eta_schedule;

  MinimizeResult res;
  res.field = v0;
  VectorField grad(v0.spec), trial(v0.spec), trial_grad(v0.spec);
  int iter = 0;
  for (double eta : schedule) {
    ModelParams stage = p;
    stage.eta = eta;
    EnergyBreakdown e = evaluate_F_eta(res.field, stage, &grad);
    double gsq = l2_norm_sq(grad);
    res.trace.push_back(row(iter, e, 0.0, std::sqrt(gsq)));
    double step = cfg.initial_step;
    res.converged = false;
    for (int it = 0; it < cfg.max_iters; ++it) {
      if (std::sqrt(gsq) < cfg.grad_tol) {
        res.converged = true;
        break;
      }
      bool accepted = false;
      EnergyBreakdown et;
      for (int b = 0; b < cfg.max_backtracks; ++b) {
        for (std::size_t c = 0; c < grad.v1.size(); ++c) {
          trial.v1[c] = res.field.v1[c] - step * grad.v1[c];
          trial.v2[c] = res.field.v2[c] - step * grad.v2[c];
        }
        et = evaluate_F_eta(trial, stage, &trial_grad);
        if (et.total <= e.total - cfg.armijo * step * gsq) {
          accepted = true;
          break;
        }
        step *= cfg.shrink;
      }
      if (!accepted) {
        res.line_search_failed = true;
        break;
      }
      if (et.total > e.total) throw std::logic_error("minimize: accepted step increased the energy");
      std::swap(res.field, trial);
      std::swap(grad, trial_grad);
      e = et;
      gsq = l2_norm_sq(grad);
      ++iter;
      res.trace.push_back(row(iter, e, step, std::sqrt(gsq)));
      step *= cfg.grow;
    }
    if (!res.converged && std::sqrt(gsq) < cfg.grad_tol) res.converged = true;
    res.energy = e;
    if (res.line_search_failed) break;
  }
  res.iterations = iter;
  return res;
}

VectorField random_unit_field(const GridSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  VectorField v(spec);
  for (std::size_t c = 0; c < v.v1.size(); ++c) {
    const double a = angle(rng);
    v.v1[c] = std::cos(a);
    v.v2[c] = std::sin(a);
  }
  return v;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  os << "iter,eta,exchange,potential,magnetostatic,magnetostriction,total,step,grad_norm\n";
  const auto old = os.precision(17);
  for (const auto& r : trace) {
    os << r.iter << ',' << r.eta << ',' << r.exchange << ',' << r.potential << ','
       << r.magnetostatic << ',' << r.magnetostriction << ',' << r.total << ',' << r.step << ','
       << r.grad_norm << '\n';
  }
  os.precision(old);
}

}  // namespace magstrict

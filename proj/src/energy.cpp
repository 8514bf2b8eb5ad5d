#include "magstrict/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "magstrict/elasticity.hpp"
#include "magstrict/fft.hpp"

namespace magstrict {

void ModelParams::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("params: mu must be > 0");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("params: eta must be > 0");
  if (!(kd_scale >= 0.0) || !std::isfinite(kd_scale)) {
    throw std::invalid_argument("params: kd_scale must be >= 0");
  }
}

void to_json(nlohmann::json& j, const ModelParams& p) {
  j = {{"mu", p.mu}, {"eta", p.eta}, {"kd_scale", p.kd_scale}};
}

void from_json(const nlohmann::json& j, ModelParams& p) {
  p.mu = j.value("mu", p.mu);
  p.eta = j.value("eta", p.eta);
  p.kd_scale = j.value("kd_scale", p.kd_scale);
}

void to_json(nlohmann::json& j, const EnergyBreakdown& e) {
  j = {{"exchange_or_wall", e.exchange_or_wall},
       {"potential", e.potential},
       {"magnetostatic", e.magnetostatic},
       {"magnetostriction", e.magnetostriction},
       {"total", e.total},
       {"params", e.params}};
}

double exchange_diffuse(const VectorField& v, const ModelParams& p) {
  const int n = v.spec.n;
  double sum = 0.0;
  auto edge = [&](std::size_t a, std::size_t b) {
    const double d1 = v.v1[a] - v.v1[b], d2 = v.v2[a] - v.v2[b];
    sum += d1 * d1 + d2 * d2;
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t c = v.spec.index(i, j);
      if (i + 1 < n) edge(c, c + 1);
      if (j + 1 < n) edge(c, c + n);
    }
  }
  return p.mu * p.eta * sum;
}

VectorField exchange_gradient(const VectorField& v, const ModelParams& p) {
  const int n = v.spec.n;
  VectorField g(v.spec);
  const double s = 2.0 * p.mu * p.eta * double(n) * n;
  auto edge = [&](std::size_t a, std::size_t b) {
    const double d1 = s * (v.v1[a] - v.v1[b]), d2 = s * (v.v2[a] - v.v2[b]);
    g.v1[a] += d1;
    g.v2[a] += d2;
    g.v1[b] -= d1;
    g.v2[b] -= d2;
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t c = v.spec.index(i, j);
      if (i + 1 < n) edge(c, c + 1);
      if (j + 1 < n) edge(c, c + n);
    }
  }
  return g;
}

double bulk_potential(const VectorField& v, const ModelParams& p) {
  double sum = 0.0;
  for (std::size_t c = 0; c < v.v1.size(); ++c) {
    const double a = v.v1[c] * v.v1[c], b = v.v2[c] * v.v2[c];
    const double gl = a + b - 1.0, phi = a - b;
    sum += gl * gl + phi * phi;
  }
  return p.mu / p.eta * sum / double(v.spec.cells());
}

VectorField potential_gradient(const VectorField& v, const ModelParams& p) {
  VectorField g(v.spec);
  const double s = p.mu / p.eta;
  for (std::size_t c = 0; c < v.v1.size(); ++c) {
    const double x = v.v1[c], y = v.v2[c];
    const double gl = x * x + y * y - 1.0, phi = x * x - y * y;
    g.v1[c] = s * (4.0 * gl * x + 4.0 * x * phi);
    g.v2[c] = s * (4.0 * gl * y - 4.0 * y * phi);
  }
  return g;
}

double wall_energy(const SpinField& m, const ModelParams& p) { return p.mu * total_variation(m); }

namespace {

// Shared stray-field evaluation; `grad` may be null.
double stray_field(const VectorField& f, double kd, VectorField* grad) {
  const int n = f.spec.n;
  const int m = f.spec.pad * n;
  const int mh = m / 2 + 1;
  const std::size_t half = std::size_t(m) * mh;
  fft::RealBuffer in(std::size_t(m) * m);
  fft::ComplexBuffer F1(half), F2(half);
  auto forward = [&](const std::vector<double>& src, fft::ComplexBuffer& dst) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) in[std::size_t(j) * m + i] = src[f.spec.index(i, j)];
    }
    fft::plan_r2c(m, m, in, dst).execute();
  };
  forward(f.v1, F1);
  forward(f.v2, F2);

  const double c = kd / (double(f.spec.pad) * f.spec.pad * double(n) * n * double(n) * n);
  double energy = 0.0;
  for (int jy = 0; jy < m; ++jy) {
    const double k2 = fft::signed_frequency(jy, m);
    for (int ix = 0; ix < mh; ++ix) {
      const std::size_t idx = std::size_t(jy) * mh + ix;
      const double weight = (ix == 0 || 2 * ix == m) ? 1.0 : 2.0;
      std::complex<double> a1, a2;  // A_k F_k
      if (ix == 0 && jy == 0) {
        a1 = 0.5 * F1[idx];
        a2 = 0.5 * F2[idx];
      } else {
        const double k1 = ix;
        const double kk = k1 * k1 + k2 * k2;
        // On a Nyquist line the representatives +-m/2 are the same mode;
        // averaging their projectors drops the cross term and keeps the
        // energy invariant under reflections of the box.
        const bool nyquist = 2 * ix == m || 2 * jy == m;
        const double p11 = k1 * k1 / kk, p22 = k2 * k2 / kk, p12 = nyquist ? 0.0 : k1 * k2 / kk;
        a1 = p11 * F1[idx] + p12 * F2[idx];
        a2 = p12 * F1[idx] + p22 * F2[idx];
      }
      energy += weight * (std::conj(F1[idx]) * a1 + std::conj(F2[idx]) * a2).real();
      if (grad != nullptr) {
        F1[idx] = a1;
        F2[idx] = a2;
      }
    }
  }
  energy *= c;

  if (grad != nullptr) {
    // dE/df = 2 c Re sum_k A_k F_k e^{+ik.x}; L^2 gradient multiplies by n^2.
    const double s = 2.0 * c * double(n) * n;
    auto back = [&](fft::ComplexBuffer& src, std::vector<double>& dst) {
      fft::plan_c2r(m, m, src, in).execute();
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) dst[f.spec.index(i, j)] += s * in[std::size_t(j) * m + i];
      }
    };
    back(F1, grad->v1);
    back(F2, grad->v2);
  }
  return energy;
}

}  // namespace

double magnetostatic_energy(const VectorField& f, const ModelParams& p) {
  if (p.kd_scale == 0.0) return 0.0;
  return stray_field(f, p.kd_scale, nullptr);
}

double magnetostatic_energy(const SpinField& m, const ModelParams& p) {
  return magnetostatic_energy(to_vector(m), p);
}

double magnetostatic_with_gradient(const VectorField& f, const ModelParams& p, VectorField& grad) {
  if (p.kd_scale == 0.0) return 0.0;
  return stray_field(f, p.kd_scale, &grad);
}

namespace {
double residual(const SymTensorField& V, Periodization mode) {
  return mode == Periodization::reflected ? elastic::reflected_residual(V)
                                          : elastic::periodic_residual(V);
}
}  // namespace

double magnetostriction_energy(const VectorField& f, Periodization mode) {
  return residual(preferred_strain(f), mode);
}

double magnetostriction_energy(const SpinField& m, Periodization mode) {
  return residual(preferred_strain(m), mode);
}

double magnetostriction_with_gradient(const VectorField& v, VectorField& grad) {
  const auto r = elastic::reflected_residual_with_dual(preferred_strain(v));
  // dE = (2/n^2) sum <dV, T>, dV = dv (x) v + v (x) dv, so the L^2 gradient
  // is 4 T v.
  const auto& T = r.dual;
  for (std::size_t c = 0; c < v.v1.size(); ++c) {
    grad.v1[c] += 4.0 * (T.xx[c] * v.v1[c] + T.xy[c] * v.v2[c]);
    grad.v2[c] += 4.0 * (T.xy[c] * v.v1[c] + T.yy[c] * v.v2[c]);
  }
  return r.energy;
}

EnergyBreakdown total_relaxed(const VectorField& v, const ModelParams& p) {
  p.validate();
  v.validate();
  EnergyBreakdown e;
  e.params = p;
  e.exchange_or_wall = exchange_diffuse(v, p);
  e.potential = bulk_potential(v, p);
  e.magnetostatic = magnetostatic_energy(v, p);
  e.magnetostriction = magnetostriction_energy(v);
  e.update_total();
  return e;
}

EnergyBreakdown total_sharp(const SpinField& m, const ModelParams& p) {
  p.validate();
  EnergyBreakdown e;
  e.params = p;
  e.exchange_or_wall = wall_energy(m, p);
  e.magnetostatic = magnetostatic_energy(m, p);
  e.magnetostriction = magnetostriction_energy(m);
  e.update_total();
  return e;
}

}  // namespace magstrict

#include "magstrict/elasticity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "magstrict/fft.hpp"

namespace magstrict {
namespace elastic {

namespace {
template <class T>
double abs2(T z) {
  return std::norm(std::complex<double>(z));
}
}  // namespace

template <class T>
double mode_residual(T vxx, T vyy, T vxy, double k1, double k2) {
  // (|k|^2 I + k k^T) / 2 w = V k
  const double a11 = 0.5 * (k1 * k1 + k1 * k1 + k2 * k2);
  const double a22 = 0.5 * (k2 * k2 + k1 * k1 + k2 * k2);
  const double a12 = 0.5 * k1 * k2;
  const double det = a11 * a22 - a12 * a12;
  const T b1 = vxx * k1 + vxy * k2;
  const T b2 = vxy * k1 + vyy * k2;
  const T w1 = (a22 * b1 - a12 * b2) / det;
  const T w2 = (a11 * b2 - a12 * b1) / det;
  const T r11 = k1 * w1 - vxx;
  const T r22 = k2 * w2 - vyy;
  const T r12 = 0.5 * (k1 * w2 + k2 * w1) - vxy;
  return abs2(r11) + abs2(r22) + 2.0 * abs2(r12);
}

template <class T>
double mode_multiplier(T vxx, T vyy, T vxy, double k1, double k2) {
  const double kk = k1 * k1 + k2 * k2;
  const double vnorm = abs2(vxx) + abs2(vyy) + 2.0 * abs2(vxy);
  const T vk1 = vxx * k1 + vxy * k2;
  const T vk2 = vxy * k1 + vyy * k2;
  const double vk = abs2(vk1) + abs2(vk2);
  const double kvk = abs2(k1 * vk1 + k2 * vk2);
  return (kk * kk * vnorm - 2.0 * kk * vk + kvk) / (kk * kk);
}

template double mode_residual<double>(double, double, double, double, double);
template double mode_residual<std::complex<double>>(std::complex<double>, std::complex<double>,
                                                    std::complex<double>, double, double);
template double mode_multiplier<double>(double, double, double, double, double);
template double mode_multiplier<std::complex<double>>(std::complex<double>, std::complex<double>,
                                                      std::complex<double>, double, double);

namespace {

// Normal-equation solve returning the residual matrix P_k V = V - sym(k w).
Sym2 mode_projection(double vxx, double vyy, double vxy, double k1, double k2) {
  const double a11 = 0.5 * (2.0 * k1 * k1 + k2 * k2);
  const double a22 = 0.5 * (k1 * k1 + 2.0 * k2 * k2);
  const double a12 = 0.5 * k1 * k2;
  const double det = a11 * a22 - a12 * a12;
  const double b1 = vxx * k1 + vxy * k2;
  const double b2 = vxy * k1 + vyy * k2;
  const double w1 = (a22 * b1 - a12 * b2) / det;
  const double w2 = (a11 * b2 - a12 * b1) / det;
  return {vxx - k1 * w1, vyy - k2 * w2, vxy - 0.5 * (k1 * w2 + k2 * w1)};
}

struct CosineCoefficients {
  fft::RealBuffer xx, yy, xy;
};

CosineCoefficients cosine_coefficients(const SymTensorField& V) {
  const int n = V.spec.n;
  const std::size_t cells = V.spec.cells();
  CosineCoefficients c{fft::RealBuffer(cells), fft::RealBuffer(cells), fft::RealBuffer(cells)};
  std::copy(V.xx.begin(), V.xx.end(), c.xx.data());
  std::copy(V.yy.begin(), V.yy.end(), c.yy.data());
  std::copy(V.xy.begin(), V.xy.end(), c.xy.data());
  // Doubled-cell mean coefficients are Y / (4 n^2) up to a unit phase.
  const double scale = 1.0 / (4.0 * double(n) * n);
  for (fft::RealBuffer* b : {&c.xx, &c.yy, &c.xy}) {
    fft::plan_dct2(n, *b).execute();
    for (std::size_t i = 0; i < cells; ++i) (*b)[i] *= scale;
  }
  return c;
}

template <class Visit>
void for_each_reflected_mode(const CosineCoefficients& c, int n, Visit&& visit) {
  // Each cosine index (p, q) stands for the modes (+-p, +-q); k and -k give
  // the same residual, so only the sign of k1 k2 matters.
  for (int q = 0; q < n; ++q) {
    for (int p = 0; p < n; ++p) {
      if (p == 0 && q == 0) continue;
      const std::size_t idx = std::size_t(q) * n + p;
      visit(idx, p, q, c.xx[idx], c.yy[idx], c.xy[idx]);
    }
  }
}

}  // namespace

double reflected_residual(const SymTensorField& V) {
  const int n = V.spec.n;
  const auto c = cosine_coefficients(V);
  double energy = 0.0;
  for_each_reflected_mode(c, n, [&](std::size_t, int p, int q, double a, double b, double o) {
    if (p > 0 && q > 0) {
      energy += 2.0 * (mode_residual(a, b, o, p, q) + mode_residual(a, b, o, p, -q));
    } else {
      energy += 2.0 * mode_residual(a, b, o, p, q);
    }
  });
  return energy;
}

ResidualWithDual reflected_residual_with_dual(const SymTensorField& V) {
  const int n = V.spec.n;
  auto c = cosine_coefficients(V);
  double energy = 0.0;
  fft::RealBuffer sxx(V.spec.cells()), syy(V.spec.cells()), sxy(V.spec.cells());
  for_each_reflected_mode(c, n, [&](std::size_t idx, int p, int q, double a, double b, double o) {
    Sym2 s;
    if (p > 0 && q > 0) {
      const Sym2 r1 = mode_projection(a, b, o, p, q);
      const Sym2 r2 = mode_projection(a, b, o, p, -q);
      s = {2.0 * (r1.xx + r2.xx), 2.0 * (r1.yy + r2.yy), 2.0 * (r1.xy + r2.xy)};
    } else {
      const Sym2 r = mode_projection(a, b, o, p, q);
      s = {2.0 * r.xx, 2.0 * r.yy, 2.0 * r.xy};
    }
    energy += s.xx * a + s.yy * b + 2.0 * s.xy * o;
    // Undo the DCT-III weights so the inverse transform sums S cos cos.
    const double w = (p == 0 ? 1.0 : 0.5) * (q == 0 ? 1.0 : 0.5);
    sxx[idx] = w * s.xx;
    syy[idx] = w * s.yy;
    sxy[idx] = w * s.xy;
  });
  ResidualWithDual out{energy, SymTensorField(V.spec)};
  fft::plan_dct3(n, sxx).execute();
  fft::plan_dct3(n, syy).execute();
  fft::plan_dct3(n, sxy).execute();
  std::copy(sxx.data(), sxx.data() + sxx.size(), out.dual.xx.begin());
  std::copy(syy.data(), syy.data() + syy.size(), out.dual.yy.begin());
  std::copy(sxy.data(), sxy.data() + sxy.size(), out.dual.xy.begin());
  return out;
}

namespace {

struct FullSpectrum {
  int m = 0;  // transform size per side
  fft::ComplexBuffer xx, yy, xy;
};

FullSpectrum full_spectrum(const std::vector<double>& xx, const std::vector<double>& yy,
                           const std::vector<double>& xy, int m) {
  const std::size_t half = std::size_t(m) * (m / 2 + 1);
  FullSpectrum s{m, fft::ComplexBuffer(half), fft::ComplexBuffer(half), fft::ComplexBuffer(half)};
  fft::RealBuffer in(std::size_t(m) * m);
  const double scale = 1.0 / (double(m) * m);
  auto run = [&](const std::vector<double>& src, fft::ComplexBuffer& dst) {
    std::copy(src.begin(), src.end(), in.data());
    fft::plan_r2c(m, m, in, dst).execute();
    for (std::size_t i = 0; i < half; ++i) dst[i] *= scale;
  };
  run(xx, s.xx);
  run(yy, s.yy);
  run(xy, s.xy);
  return s;
}

// Sum of per-mode residuals over the full spectrum held in half-complex form.
double spectrum_residual(const FullSpectrum& s) {
  const int m = s.m;
  const int mh = m / 2 + 1;
  double energy = 0.0;
  for (int jy = 0; jy < m; ++jy) {
    const int k2 = fft::signed_frequency(jy, m);
    for (int ix = 0; ix < mh; ++ix) {
      if (ix == 0 && jy == 0) continue;
      const std::size_t idx = std::size_t(jy) * mh + ix;
      const double weight = (ix == 0 || 2 * ix == m) ? 1.0 : 2.0;
      energy += weight * mode_residual(s.xx[idx], s.yy[idx], s.xy[idx], double(ix), double(k2));
    }
  }
  return energy;
}

}  // namespace

double periodic_residual(const SymTensorField& V) {
  return spectrum_residual(full_spectrum(V.xx, V.yy, V.xy, V.spec.n));
}

std::array<std::array<double, 2>, 2> average_gradient(const VectorField& u) {
  const int n = u.spec.n;
  const double span = (n - 1) * u.spec.h();
  std::array<std::array<double, 2>, 2> g{};
  for (int t = 0; t < n; ++t) {
    const std::size_t left = u.spec.index(0, t), right = u.spec.index(n - 1, t);
    const std::size_t bottom = u.spec.index(t, 0), top = u.spec.index(t, n - 1);
    g[0][0] += u.v1[right] - u.v1[left];
    g[0][1] += u.v2[right] - u.v2[left];
    g[1][0] += u.v1[top] - u.v1[bottom];
    g[1][1] += u.v2[top] - u.v2[bottom];
  }
  for (auto& row : g) {
    for (double& x : row) x /= n * span;
  }
  return g;
}

void korn_normalize(VectorField& u) {
  const int n = u.spec.n;
  const auto g = average_gradient(u);
  // g[i][j] = d_i u_j; skew part w = (d_1 u_2 - d_2 u_1) / 2 is removed by
  // subtracting the rotation (-w y, w x).
  const double w = 0.5 * (g[0][1] - g[1][0]);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t c = u.spec.index(i, j);
      u.v1[c] += w * u.spec.xc(j);
      u.v2[c] -= w * u.spec.xc(i);
    }
  }
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t c = 0; c < u.v1.size(); ++c) {
    m1 += u.v1[c];
    m2 += u.v2[c];
  }
  m1 /= double(u.v1.size());
  m2 /= double(u.v2.size());
  for (std::size_t c = 0; c < u.v1.size(); ++c) {
    u.v1[c] -= m1;
    u.v2[c] -= m2;
  }
}

}  // namespace elastic

ElasticSolution solve_spectral(const SymTensorField& V, bool with_displacement) {
  const int n = V.spec.n;
  ElasticSolution sol;
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t c = 0; c < V.xx.size(); ++c) {
    sxx += V.xx[c];
    syy += V.yy[c];
    sxy += V.xy[c];
  }
  const double cells = double(V.spec.cells());
  sol.mean_strain = {sxx / cells, syy / cells, sxy / cells};

  if (!with_displacement) {
    sol.residual_energy = elastic::reflected_residual(V);
    return sol;
  }

  // Full transform of the reflected field; also yields the displacement.
  const SymTensorField R = periodize_even(V);
  const int m = 2 * n;
  const int mh = m / 2 + 1;
  auto s = elastic::full_spectrum(R.xx, R.yy, R.xy, m);
  sol.residual_energy = elastic::spectrum_residual(s);

  fft::ComplexBuffer u1(s.xx.size()), u2(s.xx.size());
  for (int jy = 0; jy < m; ++jy) {
    const double k2 = fft::signed_frequency(jy, m);
    for (int ix = 0; ix < mh; ++ix) {
      if (ix == 0 && jy == 0) continue;
      const double k1 = ix;
      const std::size_t idx = std::size_t(jy) * mh + ix;
      const double a11 = 0.5 * (2.0 * k1 * k1 + k2 * k2);
      const double a22 = 0.5 * (k1 * k1 + 2.0 * k2 * k2);
      const double a12 = 0.5 * k1 * k2;
      const double det = a11 * a22 - a12 * a12;
      const auto b1 = s.xx[idx] * k1 + s.xy[idx] * k2;
      const auto b2 = s.xy[idx] * k1 + s.yy[idx] * k2;
      const auto w1 = (a22 * b1 - a12 * b2) / det;
      const auto w2 = (a11 * b2 - a12 * b1) / det;
      // grad e^{i pi k.x} = i pi k e^{i pi k.x} on the period-2 cell.
      const std::complex<double> inv(0.0, -1.0 / std::numbers::pi);
      u1[idx] = w1 * inv;
      u2[idx] = w2 * inv;
      if (2 * ix == m || 2 * std::abs(int(k2)) == m) {
        u1[idx] = 0.0;
        u2[idx] = 0.0;
      }
    }
  }
  fft::RealBuffer out(std::size_t(m) * m);
  sol.displacement = VectorField(V.spec);
  auto gather = [&](fft::ComplexBuffer& spec, std::vector<double>& dst) {
    fft::plan_c2r(m, m, spec, out).execute();
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) dst[V.spec.index(i, j)] = out[std::size_t(j) * m + i];
    }
  };
  gather(u1, sol.displacement.v1);
  gather(u2, sol.displacement.v2);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t c = V.spec.index(i, j);
      const double x = V.spec.xc(i), y = V.spec.xc(j);
      sol.displacement.v1[c] += sol.mean_strain.xx * x + sol.mean_strain.xy * y;
      sol.displacement.v2[c] += sol.mean_strain.xy * x + sol.mean_strain.yy * y;
    }
  }
  elastic::korn_normalize(sol.displacement);
  return sol;
}

namespace {

// Bilinear element on a square cell; local nodes counter-clockwise from the
// lower-left corner, dofs interleaved (u1, u2) per node.
struct Q1Element {
  std::array<std::array<double, 8>, 8> stiffness{};  // int_cell |e(u)|^2 = u^T K u (h-free)
  // Cell-centre strain rows for e11, e22, e12 (times h).
  std::array<double, 8> b11{}, b22{}, b12{};

  Q1Element() {
    const double g = 0.5 / std::sqrt(3.0);
    const double pts[2] = {0.5 - g, 0.5 + g};
    for (double xi : pts) {
      for (double eta : pts) {
        const auto rows = strain_rows(xi, eta);
        for (int a = 0; a < 8; ++a) {
          for (int b = 0; b < 8; ++b) {
            stiffness[a][b] += 0.25 * (rows[0][a] * rows[0][b] + rows[1][a] * rows[1][b] +
                                       2.0 * rows[2][a] * rows[2][b]);
          }
        }
      }
    }
    const auto c = strain_rows(0.5, 0.5);
    b11 = c[0];
    b22 = c[1];
    b12 = c[2];
  }

  // Strain rows (e11, e22, e12) at reference point, for unit cell size.
  static std::array<std::array<double, 8>, 3> strain_rows(double xi, double eta) {
    const double dx[4] = {-(1 - eta), (1 - eta), eta, -eta};
    const double dy[4] = {-(1 - xi), -xi, xi, (1 - xi)};
    std::array<std::array<double, 8>, 3> r{};
    for (int a = 0; a < 4; ++a) {
      r[0][2 * a] = dx[a];
      r[1][2 * a + 1] = dy[a];
      r[2][2 * a] = 0.5 * dy[a];
      r[2][2 * a + 1] = 0.5 * dx[a];
    }
    return r;
  }
};

const Q1Element& q1() {
  static const Q1Element e;
  return e;
}

std::array<std::size_t, 8> cell_dofs(int i, int j, int n) {
  const std::size_t stride = std::size_t(n) + 1;
  const std::size_t nodes[4] = {std::size_t(j) * stride + i, std::size_t(j) * stride + i + 1,
                                std::size_t(j + 1) * stride + i + 1,
                                std::size_t(j + 1) * stride + i};
  std::array<std::size_t, 8> d{};
  for (int a = 0; a < 4; ++a) {
    d[2 * a] = 2 * nodes[a];
    d[2 * a + 1] = 2 * nodes[a] + 1;
  }
  return d;
}

}  // namespace

ElasticSolution solve_direct(const SymTensorField& V, double tol, int max_iters) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_direct: tol must be positive");
  const int n = V.spec.n;
  const double h = V.spec.h();
  const auto& el = q1();
  const std::size_t ndof = 2 * std::size_t(n + 1) * std::size_t(n + 1);

  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const auto d = cell_dofs(i, j, n);
        double loc[8];
        for (int a = 0; a < 8; ++a) loc[a] = x[d[a]];
        for (int a = 0; a < 8; ++a) {
          double s = 0.0;
          for (int b = 0; b < 8; ++b) s += el.stiffness[a][b] * loc[b];
          y[d[a]] += s;
        }
      }
    }
  };

  // Load: minimizing u^T K u - 2 f^T u, f = sum_cells h^2 B^T V / h.
  std::vector<double> f(ndof, 0.0), diag(ndof, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t c = V.spec.index(i, j);
      const auto d = cell_dofs(i, j, n);
      for (int a = 0; a < 8; ++a) {
        f[d[a]] += h * (V.xx[c] * el.b11[a] + V.yy[c] * el.b22[a] + 2.0 * V.xy[c] * el.b12[a]);
        diag[d[a]] += el.stiffness[a][a];
      }
    }
  }

  std::vector<double> u(ndof, 0.0), r = f, z(ndof), p(ndof), q(ndof);
  const double fnorm = std::sqrt(std::inner_product(f.begin(), f.end(), f.begin(), 0.0));
  int it = 0;
  double rel = 0.0;
  if (fnorm > 0.0) {
    for (std::size_t k = 0; k < ndof; ++k) z[k] = r[k] / diag[k];
    p = z;
    double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
    rel = 1.0;
    while (rel >= tol) {
      if (it >= max_iters) {
        throw ConvergenceError("solve_direct: CG did not converge in " + std::to_string(it) +
                                   " iterations (relative residual " + std::to_string(rel) + ")",
                               it, rel);
      }
      apply(p, q);
      const double alpha = rz / std::inner_product(p.begin(), p.end(), q.begin(), 0.0);
      for (std::size_t k = 0; k < ndof; ++k) {
        u[k] += alpha * p[k];
        r[k] -= alpha * q[k];
      }
      ++it;
      rel = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0)) / fnorm;
      for (std::size_t k = 0; k < ndof; ++k) z[k] = r[k] / diag[k];
      const double rz_new = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t k = 0; k < ndof; ++k) p[k] = z[k] + beta * p[k];
    }
  }

  ElasticSolution sol;
  sol.iterations = it;
  // Residual by exact (2x2 Gauss) integration of |e(u) - V|^2 per cell.
  const double g = 0.5 / std::sqrt(3.0);
  const double pts[2] = {0.5 - g, 0.5 + g};
  std::array<std::array<std::array<double, 8>, 3>, 4> rows{};
  int gp = 0;
  for (double xi : pts) {
    for (double eta : pts) rows[gp++] = Q1Element::strain_rows(xi, eta);
  }
  double energy = 0.0, mxx = 0.0, myy = 0.0, mxy = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t c = V.spec.index(i, j);
      const auto d = cell_dofs(i, j, n);
      for (const auto& rw : rows) {
        double e[3] = {0, 0, 0};
        for (int a = 0; a < 8; ++a) {
          for (int s = 0; s < 3; ++s) e[s] += rw[s][a] * u[d[a]] / h;
        }
        const double r11 = e[0] - V.xx[c], r22 = e[1] - V.yy[c], r12 = e[2] - V.xy[c];
        energy += 0.25 * h * h * (r11 * r11 + r22 * r22 + 2.0 * r12 * r12);
        mxx += 0.25 * e[0];
        myy += 0.25 * e[1];
        mxy += 0.25 * e[2];
      }
    }
  }
  sol.residual_energy = energy;
  const double cells = double(V.spec.cells());
  sol.mean_strain = {mxx / cells, myy / cells, mxy / cells};

  sol.displacement = VectorField(V.spec);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const auto d = cell_dofs(i, j, n);
      const std::size_t c = V.spec.index(i, j);
      sol.displacement.v1[c] = 0.25 * (u[d[0]] + u[d[2]] + u[d[4]] + u[d[6]]);
      sol.displacement.v2[c] = 0.25 * (u[d[1]] + u[d[3]] + u[d[5]] + u[d[7]]);
    }
  }
  elastic::korn_normalize(sol.displacement);
  return sol;
}

SymTensorField random_smooth_tensor(const GridSpec& spec, std::uint64_t seed, int modes) {
  spec.validate();
  if (modes < 1) throw std::invalid_argument("random_smooth_tensor: modes must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.0, 2.0 * std::numbers::pi);
  SymTensorField V(spec);
  const int n = spec.n;
  for (std::vector<double>* comp : {&V.xx, &V.yy, &V.xy}) {
    for (int p = 1; p <= modes; ++p) {
      for (int q = 1; q <= modes; ++q) {
        const double a = amp(rng) / (p * q), phi = phase(rng), psi = phase(rng);
        for (int j = 0; j < n; ++j) {
          const double sy = std::sin(2.0 * std::numbers::pi * q * spec.xc(j) + psi);
          for (int i = 0; i < n; ++i) {
            (*comp)[spec.index(i, j)] += a * std::sin(2.0 * std::numbers::pi * p * spec.xc(i) + phi) * sy;
          }
        }
      }
    }
  }
  return V;
}

UnitCellReport unit_cell_formula_check(const SymTensorField& V, double direct_tol) {
  UnitCellReport rep;
  rep.unit_cell = elastic::periodic_residual(V);
  rep.spectral = elastic::reflected_residual(V);
  rep.direct = solve_direct(V, direct_tol).residual_energy;
  rep.deviation_spectral = std::abs(rep.unit_cell - rep.spectral);
  rep.deviation_direct = std::abs(rep.unit_cell - rep.direct);
  return rep;
}

}  // namespace magstrict

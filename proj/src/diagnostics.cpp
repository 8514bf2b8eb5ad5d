#include "magstrict/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "magstrict/fft.hpp"

namespace magstrict {

ScalarField g_field(const SpinField& m) {
  ScalarField g(m.spec);
  for (std::size_t c = 0; c < m.values.size(); ++c) g.values[c] = well_product(m.values[c]);
  return g;
}

ScalarField g_field(const VectorField& v) {
  ScalarField g(v.spec);
  for (std::size_t c = 0; c < v.v1.size(); ++c) g.values[c] = v.v1[c] * v.v2[c];
  return g;
}

namespace {

// Calls visit(k1, k2, |g_k|^2 summed over the modes with these |k1|, |k2|)
// for every nonzero frequency class.
template <class Visit>
void for_each_mode(const ScalarField& g, Periodization mode, Visit&& visit) {
  const int n = g.spec.n;
  if (mode == Periodization::reflected) {
    fft::RealBuffer c(g.spec.cells());
    std::copy(g.values.begin(), g.values.end(), c.data());
    fft::plan_dct2(n, c).execute();
    const double scale = 1.0 / (4.0 * double(n) * n);
    for (int q = 0; q < n; ++q) {
      for (int p = 0; p < n; ++p) {
        if (p == 0 && q == 0) continue;
        const double a = c[std::size_t(q) * n + p] * scale;
        const double count = (p > 0 ? 2.0 : 1.0) * (q > 0 ? 2.0 : 1.0);
        visit(0.5 * p, 0.5 * q, count * a * a);
      }
    }
    return;
  }
  const int mh = n / 2 + 1;
  fft::RealBuffer in(g.spec.cells());
  fft::ComplexBuffer out(std::size_t(n) * mh);
  std::copy(g.values.begin(), g.values.end(), in.data());
  fft::plan_r2c(n, n, in, out).execute();
  const double scale = 1.0 / (double(n) * n);
  for (int jy = 0; jy < n; ++jy) {
    const int k2 = fft::signed_frequency(jy, n);
    for (int ix = 0; ix < mh; ++ix) {
      if (ix == 0 && jy == 0) continue;
      const double weight = (ix == 0 || 2 * ix == n) ? 1.0 : 2.0;
      visit(double(ix), double(k2), weight * std::norm(out[std::size_t(jy) * mh + ix] * scale));
    }
  }
}

}  // namespace

double mixed_h_minus2(const ScalarField& g, Periodization mode) {
  double sum = 0.0;
  for_each_mode(g, mode, [&](double k1, double k2, double power) {
    const double kk = k1 * k1 + k2 * k2;
    sum += (k1 * k2) * (k1 * k2) / (kk * kk) * power;
  });
  return sum;
}

double h_minus1_norm(const ScalarField& g, Periodization mode) {
  double sum = 0.0;
  for_each_mode(g, mode, [&](double k1, double k2, double power) { sum += power / (k1 * k1 + k2 * k2); });
  return sum;
}

SupportReport spectral_support_check(const SpinField& m) {
  const int n = m.spec.n;
  const int mh = n / 2 + 1;
  const ScalarField g = g_field(m);
  fft::RealBuffer in(m.spec.cells());
  fft::ComplexBuffer out(std::size_t(n) * mh);
  std::copy(g.values.begin(), g.values.end(), in.data());
  fft::plan_r2c(n, n, in, out).execute();
  const double scale = 1.0 / (double(n) * n);
  double worst = 0.0;
  for (int ix = 0; ix < mh; ++ix) worst = std::max(worst, std::abs(out[ix]) * scale);
  for (int jy = 0; jy < n; ++jy) worst = std::max(worst, std::abs(out[std::size_t(jy) * mh]) * scale);
  return {worst < kSupportTolerance, worst};
}

void BesovIndices::validate() const {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("besov: need 0 < s < 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("besov: need finite p >= 1");
  if (!(q >= 1.0)) throw std::invalid_argument("besov: need q >= 1");
}

BesovReport besov_seminorm(const ScalarField& f, const BesovIndices& idx) {
  idx.validate();
  const int n = f.spec.n;
  const double area = f.spec.h() * f.spec.h();
  BesovReport r;
  r.j_max = int(std::floor(std::log2(double(n)))) - 2;
  double acc = 0.0;
  for (int j = r.j_min; j <= r.j_max; ++j) {
    const double t = std::ldexp(1.0, -j);
    const int reach = int(std::floor(t * n));
    const int step = std::max(1, reach / 8);
    double best = 0.0;
    // Half plane of shifts; -z gives the same norm on the overlap.
    for (int b = 0; b <= reach; b += step) {
      for (int a = -reach; a <= reach; a += step) {
        if (b == 0 && a <= 0) continue;
        if (double(a) * a + double(b) * b > double(reach) * reach) continue;
        double sum = 0.0;
        for (int y = 0; y + b < n; ++y) {
          for (int x = std::max(0, -a); x < n && x + a < n; ++x) {
            const double d = f.at(x + a, y + b) - f.at(x, y);
            sum += std::pow(std::abs(d), idx.p);
          }
        }
        best = std::max(best, std::pow(sum * area, 1.0 / idx.p));
      }
    }
    const double term = best / std::pow(t, idx.s);
    if (std::isinf(idx.q)) {
      acc = std::max(acc, term);
    } else {
      acc += std::pow(term, idx.q);
    }
  }
  r.value = std::isinf(idx.q) ? acc : std::pow(acc, 1.0 / idx.q);
  return r;
}

ScalarField component(const SpinField& m, Component c) {
  if (c == Component::g) return g_field(m);
  ScalarField out(m.spec);
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    const auto v = well_vector(m.values[i]);
    out.values[i] = c == Component::m1 ? v[0] : v[1];
  }
  return out;
}

}  // namespace magstrict

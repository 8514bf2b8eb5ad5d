#include "magstrict/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace magstrict {

void ZigZagParams::validate(const GridSpec& spec) const {
  if (k < 1 || l < 1) throw std::invalid_argument("zigzag: k and l must be >= 1");
  if (std::int64_t(k) * l > spec.n / 4) {
    throw UnresolvableError("zigzag: unresolvable, l*k = " + std::to_string(std::int64_t(k) * l) +
                            " exceeds n/4 = " + std::to_string(spec.n / 4));
  }
  if (spec.n % (2 * k) != 0) {
    throw UnresolvableError("zigzag: unresolvable, 2k = " + std::to_string(2 * k) +
                            " does not divide n = " + std::to_string(spec.n));
  }
}

SpinField build_uniform(Well well, const GridSpec& spec) {
  spec.validate();
  return SpinField(spec, well);
}

SpinField build_stripes(StripeNormal normal, int k, std::pair<Well, Well> wells, const GridSpec& spec) {
  spec.validate();
  if (k < 0) throw std::invalid_argument("stripes: k must be >= 0");
  const int n = spec.n;
  // Coordinate along the normal, in cell units, and its range.
  const bool diag = normal == StripeNormal::diagonal;
  const std::int64_t span = diag ? 2 * std::int64_t(n) - 1 : n;
  if (2 * (std::int64_t(k) + 1) > span) {
    throw UnresolvableError("stripes: unresolvable, " + std::to_string(k + 1) +
                            " stripes do not fit " + std::to_string(span) + " cells");
  }
  SpinField m(spec);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::int64_t s = diag ? i + j : i;
      const std::int64_t stripe = s * (k + 1) / span;
      m.at(i, j) = stripe % 2 == 0 ? wells.first : wells.second;
    }
  }
  return m;
}

SpinField build_normal_landau(int k, const GridSpec& spec) {
  spec.validate();
  if (k < 1) throw std::invalid_argument("normal landau: k must be >= 1");
  if (8 * k > spec.n) {
    throw UnresolvableError("normal landau: unresolvable, k = " + std::to_string(k) +
                            " exceeds n/8");
  }
  const int n = spec.n;
  const double R = std::sqrt(2.0) / 4.0;  // half side of the diamond in (s, t)
  const double W = 2.0 * R / k;
  SpinField m(spec);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x = spec.xc(i), y = spec.xc(j);
      const double s = (x + y) * kInvSqrt2, t = (y - x) * kInvSqrt2;
      Well w;
      if (s > R) {
        w = Well::MP;
      } else if (s < -R) {
        w = Well::PM;
      } else if (t > R) {
        w = Well::PP;
      } else if (t < -R) {
        w = Well::MM;
      } else {
        const int band = std::clamp(int(std::floor((t + R) / W)), 0, k - 1);
        const double lo = -R + band * W;
        const double to_wall = std::min(t - lo, lo + W - t);
        const bool even = band % 2 == 0;
        if (R - std::abs(s) < to_wall) {
          w = even ? Well::MP : Well::PM;  // closure flux along +-(-1, 1)
        } else {
          w = even ? Well::PP : Well::MM;  // bulk flux along +-(1, 1)
        }
      }
      m.at(i, j) = w;
    }
  }
  return m;
}

SpinField build_zigzag(const ZigZagParams& p, const GridSpec& spec) {
  spec.validate();
  p.validate(spec);
  const int n = spec.n;
  const int P = n / p.k;   // stripe pair period in cells
  const int w = P / 2;     // stripe width, also the chevron amplitude
  const int fine = std::max(2, P / p.l);

  // Wall offsets in the chevron coordinate xi = j - z, which spans [-w, n).
  // Only walls with offsets in [-w, 0) reach the bottom edge and only those
  // in [n - w, n) reach the top edge, so the fine bands are w thick.
  std::vector<int> walls;
  int c = -w;
  for (; c < 0; c += fine) walls.push_back(c);
  for (; c < n - w; c += P) walls.push_back(c);
  for (c = std::max(c, n - w); c < n; c += fine) walls.push_back(c);

  SpinField m(spec);
  for (int j = 0; j < n; ++j) {
    // Integer shear: row j is shifted by floor(j P / n), which takes each
    // value 0..P-1 exactly n/P times.
    const int shift = int(std::int64_t(j) * P / n);
    for (int i = 0; i < n; ++i) {
      const int u = (i + shift) % P;
      const bool plus = u < w;  // g = +1/2 stripe
      const int z = plus ? u : P - u;
      const int xi = j - z;
      const auto crossed = std::upper_bound(walls.begin(), walls.end(), xi) - walls.begin();
      const bool up = crossed % 2 == 0;
      Well well;
      if (plus) {
        well = up ? Well::PP : Well::MM;
      } else {
        well = up ? Well::PM : Well::MP;
      }
      m.at(i, j) = well;
    }
  }
  return m;
}

M0Report check_M0(const SpinField& m) {
  const int n = m.spec.n;
  std::vector<double> rows(n, 0.0), cols(n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double g = well_product(m.at(i, j));
      rows[j] += g;
      cols[i] += g;
    }
  }
  double worst = 0.0;
  for (int a = 0; a < n; ++a) worst = std::max({worst, std::abs(rows[a]), std::abs(cols[a])});
  M0Report r;
  r.max_line_integral = worst * m.spec.h();
  r.pass = r.max_line_integral < kM0Tolerance;
  return r;
}

double zigzag_model_energy(double mu, double c, int k, int l) {
  return mu * (k + l) + c / (double(k) * l);
}

KLChoice optimize_kl(double mu, double c) {
  if (!(mu > 0.0) || !(c > 0.0) || !std::isfinite(mu) || !std::isfinite(c)) {
    throw std::invalid_argument("optimize_kl: mu and c must be positive and finite");
  }
  const double x = std::cbrt(c / mu);
  const int lo = std::max(1, int(std::floor(x / 4.0)));
  const int hi = int(std::ceil(4.0 * x)) + 2;
  KLChoice best{1, 1, zigzag_model_energy(mu, c, 1, 1)};
  for (int k = lo; k <= hi; ++k) {
    for (int l = lo; l <= hi; ++l) {
      const double e = zigzag_model_energy(mu, c, k, l);
      const bool better = e < best.energy ||
                          (e == best.energy && (k + l < best.k + best.l ||
                                                (k + l == best.k + best.l && k < best.k)));
      if (better) best = {k, l, e};
    }
  }
  return best;
}

}  // namespace magstrict

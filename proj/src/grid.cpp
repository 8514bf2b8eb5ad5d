#include "magstrict/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace magstrict {

GridSpec::GridSpec(int n_, int pad_) : n(n_), pad(pad_) { validate(); }

void GridSpec::validate() const {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("grid: n must be even and >= 8 (got " + std::to_string(n) + ")");
  }
  if (pad < 2) {
    throw std::invalid_argument("grid: pad must be >= 2 (got " + std::to_string(pad) + ")");
  }
}

namespace {

constexpr std::array<std::array<int, 2>, 4> kWellSigns{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};

Well well_from_signs(int s1, int s2) {
  for (int w = 0; w < 4; ++w) {
    if (kWellSigns[w][0] == s1 && kWellSigns[w][1] == s2) return static_cast<Well>(w);
  }
  throw std::logic_error("well_from_signs: bad signs");
}

// Position part of symmetry `sym` on an n x n cell grid.
std::array<int, 2> map_position(int i, int j, int n, int sym) {
  if (sym & 1) std::swap(i, j);
  if (sym & 2) i = n - 1 - i;
  if (sym & 4) j = n - 1 - j;
  return {i, j};
}

// Value part: the same orthogonal map acting on a vector.
std::array<double, 2> map_value(double a, double b, int sym) {
  if (sym & 1) std::swap(a, b);
  if (sym & 2) a = -a;
  if (sym & 4) b = -b;
  return {a, b};
}

template <class Field, class Fn>
Field remap(const Field& src, int sym, Fn&& assign) {
  if (sym < 0 || sym >= kSquareSymmetries) throw std::invalid_argument("symmetry index out of range");
  Field out = src;
  const int n = src.spec.n;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const auto [ti, tj] = map_position(i, j, n, sym);
      assign(out, src.spec.index(ti, tj), src.spec.index(i, j));
    }
  }
  return out;
}

}  // namespace

std::array<double, 2> well_vector(Well w) {
  const auto& s = kWellSigns[static_cast<int>(w)];
  return {s[0] * kInvSqrt2, s[1] * kInvSqrt2};
}

double well_product(Well w) {
  const auto& s = kWellSigns[static_cast<int>(w)];
  return 0.5 * s[0] * s[1];
}

Well rotate(Well w, int quarter_turns) {
  return static_cast<Well>(((static_cast<int>(w) + quarter_turns) % 4 + 4) % 4);
}

Well opposite(Well w) { return rotate(w, 2); }

Well well_from_int(int label) {
  if (label < 0 || label > 3) throw std::invalid_argument("well label must be 0..3");
  return static_cast<Well>(label);
}

Well apply_symmetry(Well w, int sym) {
  const auto& s = kWellSigns[static_cast<int>(w)];
  const auto v = map_value(s[0], s[1], sym);
  return well_from_signs(static_cast<int>(v[0]), static_cast<int>(v[1]));
}

SpinField::SpinField(GridSpec s, Well fill) : spec(s), values(s.cells(), fill) { s.validate(); }

VectorField::VectorField(GridSpec s) : spec(s), v1(s.cells(), 0.0), v2(s.cells(), 0.0) {
  s.validate();
}

void VectorField::validate() const {
  spec.validate();
  if (v1.size() != spec.cells() || v2.size() != spec.cells()) {
    throw std::invalid_argument("vector field: size does not match grid");
  }
  for (std::size_t c = 0; c < v1.size(); ++c) {
    if (!std::isfinite(v1[c]) || !std::isfinite(v2[c])) {
      throw std::invalid_argument("vector field: non-finite entry");
    }
  }
}

ScalarField::ScalarField(GridSpec s, double fill) : spec(s), values(s.cells(), fill) {}

SymTensorField::SymTensorField(GridSpec s)
    : spec(s), xx(s.cells(), 0.0), yy(s.cells(), 0.0), xy(s.cells(), 0.0) {}

SpinField project_to_wells(const VectorField& v) {
  SpinField m(v.spec);
  for (std::size_t c = 0; c < v.v1.size(); ++c) {
    m.values[c] = well_from_signs(v.v1[c] < 0.0 ? -1 : 1, v.v2[c] < 0.0 ? -1 : 1);
  }
  return m;
}

VectorField to_vector(const SpinField& m) {
  VectorField v(m.spec);
  for (std::size_t c = 0; c < m.values.size(); ++c) {
    const auto z = well_vector(m.values[c]);
    v.v1[c] = z[0];
    v.v2[c] = z[1];
  }
  return v;
}

SymTensorField preferred_strain(const SpinField& m) {
  SymTensorField e(m.spec);
  for (std::size_t c = 0; c < m.values.size(); ++c) e.xy[c] = well_product(m.values[c]);
  return e;
}

SymTensorField preferred_strain(const VectorField& v) {
  SymTensorField e(v.spec);
  for (std::size_t c = 0; c < v.v1.size(); ++c) {
    e.xx[c] = v.v1[c] * v.v1[c] - 0.5;
    e.yy[c] = v.v2[c] * v.v2[c] - 0.5;
    e.xy[c] = v.v1[c] * v.v2[c];
  }
  return e;
}

namespace {

std::vector<double> reflect_component(const std::vector<double>& src, int n) {
  const int m = 2 * n;
  std::vector<double> out(std::size_t(m) * m);
  for (int j = 0; j < m; ++j) {
    const int sj = j < n ? j : m - 1 - j;
    for (int i = 0; i < m; ++i) {
      const int si = i < n ? i : m - 1 - i;
      out[std::size_t(j) * m + i] = src[std::size_t(sj) * n + si];
    }
  }
  return out;
}

std::vector<double> restrict_component(const std::vector<double>& src, int m) {
  const int n = m / 2;
  std::vector<double> out(std::size_t(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out[std::size_t(j) * n + i] = src[std::size_t(j) * m + i];
  }
  return out;
}

GridSpec doubled(const GridSpec& s) {
  GridSpec d;
  d.n = 2 * s.n;
  d.pad = s.pad;
  return d;
}

GridSpec halved(const GridSpec& s) {
  if (s.n % 2 != 0) throw std::invalid_argument("restrict_to_unit: odd grid");
  GridSpec d;
  d.n = s.n / 2;
  d.pad = s.pad;
  return d;
}

}  // namespace

ScalarField periodize_even(const ScalarField& f) {
  ScalarField out;
  out.spec = doubled(f.spec);
  out.values = reflect_component(f.values, f.spec.n);
  return out;
}

SymTensorField periodize_even(const SymTensorField& f) {
  SymTensorField out;
  out.spec = doubled(f.spec);
  out.xx = reflect_component(f.xx, f.spec.n);
  out.yy = reflect_component(f.yy, f.spec.n);
  out.xy = reflect_component(f.xy, f.spec.n);
  return out;
}

ScalarField restrict_to_unit(const ScalarField& f) {
  ScalarField out;
  out.spec = halved(f.spec);
  out.values = restrict_component(f.values, f.spec.n);
  return out;
}

SymTensorField restrict_to_unit(const SymTensorField& f) {
  SymTensorField out;
  out.spec = halved(f.spec);
  out.xx = restrict_component(f.xx, f.spec.n);
  out.yy = restrict_component(f.yy, f.spec.n);
  out.xy = restrict_component(f.xy, f.spec.n);
  return out;
}

double total_variation(const SpinField& m) {
  const int n = m.spec.n;
  // |a - b| for well labels depends only on the label difference.
  constexpr double kJump[4] = {0.0, 1.41421356237309504880, 2.0, 1.41421356237309504880};
  auto jump = [&](Well a, Well b) {
    return kJump[((static_cast<int>(a) - static_cast<int>(b)) % 4 + 4) % 4];
  };
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i + 1 < n) sum += jump(m.at(i, j), m.at(i + 1, j));
      if (j + 1 < n) sum += jump(m.at(i, j), m.at(i, j + 1));
    }
  }
  return sum / n;
}

SpinField apply_symmetry(const SpinField& m, int sym) {
  return remap(m, sym, [&](SpinField& out, std::size_t to, std::size_t from) {
    out.values[to] = apply_symmetry(m.values[from], sym);
  });
}

VectorField apply_symmetry(const VectorField& v, int sym) {
  return remap(v, sym, [&](VectorField& out, std::size_t to, std::size_t from) {
    const auto r = map_value(v.v1[from], v.v2[from], sym);
    out.v1[to] = r[0];
    out.v2[to] = r[1];
  });
}

ScalarField apply_symmetry(const ScalarField& f, int sym) {
  return remap(f, sym, [&](ScalarField& out, std::size_t to, std::size_t from) {
    out.values[to] = f.values[from];
  });
}

SymTensorField apply_symmetry(const SymTensorField& f, int sym) {
  return remap(f, sym, [&](SymTensorField& out, std::size_t to, std::size_t from) {
    double a = f.xx[from], b = f.yy[from], c = f.xy[from];
    // R V R^T for R a signed permutation.
    if (sym & 1) std::swap(a, b);
    if (sym & 2) c = -c;
    if (sym & 4) c = -c;
    out.xx[to] = a;
    out.yy[to] = b;
    out.xy[to] = c;
  });
}

}  // namespace magstrict

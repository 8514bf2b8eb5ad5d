#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "magstrict/constructions.hpp"
#include "magstrict/diagnostics.hpp"
#include "magstrict/elasticity.hpp"
#include "magstrict/energy.hpp"
#include "magstrict/grid.hpp"
#include "magstrict/io.hpp"
#include "magstrict/relax.hpp"
#include "magstrict/scaling.hpp"

namespace py = pybind11;
using namespace magstrict;

namespace {

using IntArray = py::array_t<int, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

int square_side(const py::buffer_info& b, const char* what) {
  if (b.ndim != 2 || b.shape[0] != b.shape[1]) {
    throw std::invalid_argument(std::string(what) + ": expected a square 2D array");
  }
  return static_cast<int>(b.shape[0]);
}

SpinField spin_from(IntArray labels, int pad) {
  const auto b = labels.request();
  SpinField m(GridSpec(square_side(b, "labels"), pad));
  const int* p = static_cast<const int*>(b.ptr);
  for (std::size_t c = 0; c < m.values.size(); ++c) m.values[c] = well_from_int(p[c]);
  return m;
}

IntArray spin_to(const SpinField& m) {
  IntArray out({m.spec.n, m.spec.n});
  int* p = out.mutable_data();
  for (std::size_t c = 0; c < m.values.size(); ++c) p[c] = static_cast<int>(m.values[c]);
  return out;
}

VectorField vector_from(RealArray v1, RealArray v2, int pad) {
  const auto a = v1.request(), b = v2.request();
  const int n = square_side(a, "v1");
  if (square_side(b, "v2") != n) throw std::invalid_argument("v1 and v2 differ in shape");
  VectorField v(GridSpec(n, pad));
  std::copy_n(static_cast<const double*>(a.ptr), v.v1.size(), v.v1.begin());
  std::copy_n(static_cast<const double*>(b.ptr), v.v2.size(), v.v2.begin());
  v.validate();
  return v;
}

RealArray real_to(const std::vector<double>& src, int n) {
  RealArray out({n, n});
  std::copy(src.begin(), src.end(), out.mutable_data());
  return out;
}

SymTensorField tensor_from(RealArray xx, RealArray yy, RealArray xy) {
  const auto a = xx.request(), b = yy.request(), c = xy.request();
  const int n = square_side(a, "xx");
  if (square_side(b, "yy") != n || square_side(c, "xy") != n) {
    throw std::invalid_argument("tensor components differ in shape");
  }
  SymTensorField V(GridSpec(n, 8));
  std::copy_n(static_cast<const double*>(a.ptr), V.xx.size(), V.xx.begin());
  std::copy_n(static_cast<const double*>(b.ptr), V.yy.size(), V.yy.begin());
  std::copy_n(static_cast<const double*>(c.ptr), V.xy.size(), V.xy.begin());
  return V;
}

py::dict breakdown_dict(const EnergyBreakdown& e) {
  py::dict d;
  d["exchange_or_wall"] = e.exchange_or_wall;
  d["potential"] = e.potential;
  d["magnetostatic"] = e.magnetostatic;
  d["magnetostriction"] = e.magnetostriction;
  d["total"] = e.total;
  return d;
}

ScalarField scalar_from(RealArray f) {
  const auto b = f.request();
  ScalarField out(GridSpec(square_side(b, "field"), 8));
  std::copy_n(static_cast<const double*>(b.ptr), out.values.size(), out.values.begin());
  return out;
}

py::dict record_dict(const SweepRecord& r) {
  py::dict d = breakdown_dict(r.energies);
  d["mu"] = r.mu;
  d["k"] = r.k;
  d["l"] = r.l;
  d["n"] = r.n;
  d["pad"] = r.pad;
  d["pattern"] = r.pattern;
  d["mode"] = to_string(r.mode);
  d["seconds"] = r.seconds;
  d["skipped"] = r.skipped;
  d["note"] = r.reason;
  return d;
}

Periodization periodization_from(const std::string& s) {
  if (s == "reflected") return Periodization::reflected;
  if (s == "periodic") return Periodization::periodic;
  throw std::invalid_argument("periodization must be 'reflected' or 'periodic'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral micromagnetics with magnetostriction on the unit square.";

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double mu, double eta, double kd_scale) {
             ModelParams p{mu, eta, kd_scale};
             p.validate();
             return p;
           }),
           py::arg("mu") = 1e-2, py::arg("eta") = 1.0 / 32.0, py::arg("kd_scale") = 1.0)
      .def_readwrite("mu", &ModelParams::mu)
      .def_readwrite("eta", &ModelParams::eta)
      .def_readwrite("kd_scale", &ModelParams::kd_scale)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(mu=" + std::to_string(p.mu) + ", eta=" + std::to_string(p.eta) +
               ", kd_scale=" + std::to_string(p.kd_scale) + ")";
      });

  m.def("total_variation", [](IntArray labels) { return total_variation(spin_from(labels, 8)); },
        py::arg("labels"));

  m.def(
      "total_sharp",
      [](IntArray labels, const ModelParams& p, int pad) {
        return breakdown_dict(total_sharp(spin_from(labels, pad), p));
      },
      py::arg("labels"), py::arg("params") = ModelParams{}, py::arg("pad") = 8);
  m.def(
      "total_relaxed",
      [](RealArray v1, RealArray v2, const ModelParams& p, int pad) {
        return breakdown_dict(total_relaxed(vector_from(v1, v2, pad), p));
      },
      py::arg("v1"), py::arg("v2"), py::arg("params") = ModelParams{}, py::arg("pad") = 8);
  m.def(
      "magnetostatic_energy",
      [](IntArray labels, const ModelParams& p, int pad) {
        return magnetostatic_energy(spin_from(labels, pad), p);
      },
      py::arg("labels"), py::arg("params") = ModelParams{}, py::arg("pad") = 8);
  m.def(
      "magnetostriction_energy",
      [](IntArray labels, const std::string& mode) {
        return magnetostriction_energy(spin_from(labels, 8), periodization_from(mode));
      },
      py::arg("labels"), py::arg("periodization") = "reflected");

  m.def(
      "solve_spectral",
      [](RealArray xx, RealArray yy, RealArray xy) {
        const auto s = solve_spectral(tensor_from(xx, yy, xy), true);
        const int n = s.displacement.spec.n;
        return py::make_tuple(s.residual_energy, real_to(s.displacement.v1, n),
                              real_to(s.displacement.v2, n));
      },
      py::arg("xx"), py::arg("yy"), py::arg("xy"));
  m.def(
      "solve_direct",
      [](RealArray xx, RealArray yy, RealArray xy, double tol) {
        const auto s = solve_direct(tensor_from(xx, yy, xy), tol);
        const int n = s.displacement.spec.n;
        return py::make_tuple(s.residual_energy, real_to(s.displacement.v1, n),
                              real_to(s.displacement.v2, n));
      },
      py::arg("xx"), py::arg("yy"), py::arg("xy"), py::arg("tol") = 1e-10);

  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<UnresolvableError>(m, "UnresolvableError", PyExc_ValueError);

  // Constructions.
  m.def(
      "build_uniform", [](int well, int n) { return spin_to(build_uniform(well_from_int(well), GridSpec(n, 2))); },
      py::arg("well"), py::arg("n"));
  m.def(
      "build_stripes",
      [](const std::string& normal, int k, std::pair<int, int> wells, int n) {
        if (normal != "axis" && normal != "diagonal") throw std::invalid_argument("normal must be 'axis' or 'diagonal'");
        return spin_to(build_stripes(normal == "axis" ? StripeNormal::axis : StripeNormal::diagonal, k,
                                     {well_from_int(wells.first), well_from_int(wells.second)}, GridSpec(n, 2)));
      },
      py::arg("normal"), py::arg("k"), py::arg("wells"), py::arg("n"));
  m.def(
      "build_normal_landau", [](int k, int n) { return spin_to(build_normal_landau(k, GridSpec(n, 2))); },
      py::arg("k"), py::arg("n"));
  m.def(
      "build_zigzag", [](int k, int l, int n) { return spin_to(build_zigzag({k, l}, GridSpec(n, 2))); },
      py::arg("k"), py::arg("l"), py::arg("n"));
  m.def(
      "check_M0",
      [](IntArray labels) {
        const auto r = check_M0(spin_from(labels, 8));
        return py::make_tuple(r.pass, r.max_line_integral);
      },
      py::arg("labels"));
  m.def(
      "optimize_kl",
      [](double mu, double c) {
        const auto r = optimize_kl(mu, c);
        return py::make_tuple(r.k, r.l, r.energy);
      },
      py::arg("mu"), py::arg("c"));

  // Diagnostics.
  m.def(
      "g_field", [](IntArray labels) { const auto g = g_field(spin_from(labels, 8)); return real_to(g.values, g.spec.n); },
      py::arg("labels"));
  m.def(
      "spectral_support_check",
      [](IntArray labels) {
        const auto r = spectral_support_check(spin_from(labels, 8));
        return py::make_tuple(r.pass, r.max_axis_mode);
      },
      py::arg("labels"));
  m.def(
      "mixed_h_minus2",
      [](RealArray g, const std::string& mode) { return mixed_h_minus2(scalar_from(g), periodization_from(mode)); },
      py::arg("g"), py::arg("periodization") = "reflected");
  m.def(
      "h_minus1_norm",
      [](RealArray g, const std::string& mode) { return h_minus1_norm(scalar_from(g), periodization_from(mode)); },
      py::arg("g"), py::arg("periodization") = "reflected");
  m.def(
      "besov_seminorm",
      [](RealArray f, double s, double p, double q) {
        BesovIndices idx{s, p, q};
        idx.validate();
        return besov_seminorm(scalar_from(f), idx).value;
      },
      py::arg("f"), py::arg("s") = 1.0 / 3.0, py::arg("p") = 3.0, py::arg("q") = 6.0);

  // Relaxation.
  m.def(
      "minimize",
      [](RealArray v1, RealArray v2, const ModelParams& p, int pad, int max_iters, double grad_tol,
         std::vector<double> eta_schedule) {
        MinimizeConfig cfg;
        cfg.max_iters = max_iters;
        cfg.grad_tol = grad_tol;
        cfg.eta_schedule = std::move(eta_schedule);
        MinimizeResult r;
        {
          py::gil_scoped_release release;
          r = minimize_F_eta(vector_from(v1, v2, pad), p, cfg);
        }
        py::list trace;
        for (const auto& t : r.trace) {
          py::dict d;
          d["iter"] = t.iter;
          d["eta"] = t.eta;
          d["total"] = t.total;
          d["step"] = t.step;
          d["grad_norm"] = t.grad_norm;
          trace.append(d);
        }
        py::dict out;
        out["v1"] = real_to(r.field.v1, r.field.spec.n);
        out["v2"] = real_to(r.field.v2, r.field.spec.n);
        out["energy"] = breakdown_dict(r.energy);
        out["trace"] = trace;
        out["converged"] = r.converged;
        out["iterations"] = r.iterations;
        return out;
      },
      py::arg("v1"), py::arg("v2"), py::arg("params") = ModelParams{}, py::arg("pad") = 8,
      py::arg("max_iters") = 200, py::arg("grad_tol") = 1e-6, py::arg("eta_schedule") = std::vector<double>{});

  // Scaling.
  m.def(
      "nondimensionalize",
      [](double A, double Ka, double c44, double lambda111, double Kd, double L) {
        return nondimensionalize({A, Ka, c44, lambda111, Kd, L});
      },
      py::arg("A"), py::arg("Ka"), py::arg("c44"), py::arg("lambda111"), py::arg("Kd"), py::arg("L") = 1.0);
  m.def(
      "run_sweep",
      [](std::vector<double> mu_list, int pad, int n_min, int n_max, double c, bool compare_normal_landau) {
        SweepConfig cfg;
        cfg.mu_list = std::move(mu_list);
        cfg.pad = pad;
        cfg.n_min = n_min;
        cfg.n_max = n_max;
        cfg.c = c;
        cfg.compare_normal_landau = compare_normal_landau;
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = run_sweep(cfg);
        }
        py::list recs;
        for (const auto& rec : r.records) recs.append(record_dict(rec));
        return py::make_tuple(r.c, recs);
      },
      py::arg("mu_list"), py::arg("pad") = 4, py::arg("n_min") = 128, py::arg("n_max") = 4096, py::arg("c") = 0.0,
      py::arg("compare_normal_landau") = true);
  m.def(
      "fit_exponent",
      [](const std::vector<double>& mu, const std::vector<double>& total) {
        const Fit f = fit_exponent(mu, total);
        return py::make_tuple(f.slope, f.intercept, f.r2);
      },
      py::arg("mu"), py::arg("total"));

  // Field files.
  m.def(
      "save_spin_field",
      [](const std::string& path, IntArray labels, int pad) { save_field(path, spin_from(labels, pad)); },
      py::arg("path"), py::arg("labels"), py::arg("pad") = 8);
  m.def(
      "load_field",
      [](const std::string& path) {
        const FieldFile f = load_field(path);
        py::dict d;
        d["kind"] = field_kind(f.field);
        d["pad"] = field_spec(f.field).pad;
        d["meta"] = f.meta.dump();
        if (const auto* s = std::get_if<SpinField>(&f.field)) {
          d["labels"] = spin_to(*s);
        } else if (const auto* v = std::get_if<VectorField>(&f.field)) {
          d["v1"] = real_to(v->v1, v->spec.n);
          d["v2"] = real_to(v->v2, v->spec.n);
        } else {
          const auto& sc = std::get<ScalarField>(f.field);
          d["values"] = real_to(sc.values, sc.spec.n);
        }
        return d;
      },
      py::arg("path"));
}

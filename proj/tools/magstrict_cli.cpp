// magstrict command-line driver.
//
// Exit codes: 0 success, 1 internal error, 2 usage or input error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "magstrict/constructions.hpp"
#include "magstrict/diagnostics.hpp"
#include "magstrict/elasticity.hpp"
#include "magstrict/energy.hpp"
#include "magstrict/io.hpp"
#include "magstrict/relax.hpp"
#include "magstrict/scaling.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace magstrict;

namespace {

constexpr const char* kOutDirEnv = "MAGSTRICT_OUT_DIR";

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FieldFile load(const std::string& path) {
  try {
    return load_field(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

std::string resolve(const std::string& out_dir, const std::string& out, const std::string& fallback) {
  const fs::path p = out.empty() ? fs::path(out_dir) / fallback : fs::path(out);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p.string();
}

void write_manifest(const std::string& path, const std::string& command, const json& config,
                    const json& outputs, const json& extra = json::object()) {
  json m = {{"command", command},
            {"config", config},
            {"config_hash", config_hash(config)},
            {"outputs", outputs}};
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
  std::ofstream os(path);
  if (!os) throw InputError("cannot write manifest '" + path + "'");
  os << m.dump(2) << '\n';
}

struct ParamFlags {
  ModelParams p;
  void add(CLI::App* app) {
    app->add_option("--mu", p.mu, "wall energy scale")->capture_default_str();
    app->add_option("--eta", p.eta, "transition layer width")->capture_default_str();
    app->add_option("--kd-scale", p.kd_scale, "magnetostatic prefactor")->capture_default_str();
  }
};

json breakdown_json(const EnergyBreakdown& e) {
  json j;
  to_json(j, e);
  return j;
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  std::string pattern;
  int n = 128, pad = 8, k = 4, l = 4, well = 0;
  std::string normal = "axis";
  std::vector<int> wells = {0, 1};
  std::string out;
};

int run_construct(const ConstructArgs& a, const std::string& out_dir) {
  const GridSpec spec(a.n, a.pad);
  SpinField m;
  json params = {{"pattern", a.pattern}, {"n", a.n}, {"pad", a.pad}};
  if (a.pattern == "uniform") {
    m = build_uniform(well_from_int(a.well), spec);
    params["well"] = a.well;
  } else if (a.pattern == "stripes") {
    if (a.normal != "axis" && a.normal != "diagonal") throw std::invalid_argument("--normal must be axis or diagonal");
    if (a.wells.size() != 2) throw std::invalid_argument("--wells takes two labels");
    m = build_stripes(a.normal == "axis" ? StripeNormal::axis : StripeNormal::diagonal, a.k,
                      {well_from_int(a.wells[0]), well_from_int(a.wells[1])}, spec);
    params["normal"] = a.normal;
    params["k"] = a.k;
    params["wells"] = a.wells;
  } else if (a.pattern == "normal-landau") {
    m = build_normal_landau(a.k, spec);
    params["k"] = a.k;
  } else if (a.pattern == "zigzag") {
    m = build_zigzag({a.k, a.l}, spec);
    params["k"] = a.k;
    params["l"] = a.l;
  } else {
    throw std::invalid_argument("unknown pattern '" + a.pattern + "'");
  }
  const M0Report r = check_M0(m);
  json meta = params;
  meta["m0_pass"] = r.pass;
  meta["m0_max_line_integral"] = r.max_line_integral;
  meta["total_variation"] = total_variation(m);
  const std::string path = resolve(out_dir, a.out, a.pattern + ".field");
  save_field(path, m, meta);
  write_manifest(path + ".manifest.json", "construct", params, json::array({path}));
  std::cout << json{{"field", path}, {"meta", meta}}.dump(2) << '\n';
  return 0;
}

// ------------------------------------------------------------------- energy

struct EnergyArgs {
  std::string file;
  ParamFlags params;
  bool sharp = false;
  int pad = 0;
};

int run_energy(const EnergyArgs& a) {
  FieldFile f = load(a.file);
  const GridSpec& spec0 = field_spec(f.field);
  const GridSpec spec(spec0.n, a.pad > 0 ? a.pad : spec0.pad);
  json out;
  if (std::holds_alternative<ScalarField>(f.field)) {
    throw InputError("energy: scalar fields carry no magnetization");
  }
  EnergyBreakdown e;
  if (a.sharp) {
    SpinField m = std::holds_alternative<SpinField>(f.field) ? std::get<SpinField>(f.field)
                                                              : project_to_wells(std::get<VectorField>(f.field));
    m.spec = spec;
    e = total_sharp(m, a.params.p);
    out["functional"] = "F_0";
  } else {
    VectorField v = std::holds_alternative<SpinField>(f.field) ? to_vector(std::get<SpinField>(f.field))
                                                                : std::get<VectorField>(f.field);
    v.spec = spec;
    e = total_relaxed(v, a.params.p);
    out["functional"] = "F_eta";
  }
  out["energy"] = breakdown_json(e);
  out["field"] = a.file;
  out["n"] = spec.n;
  out["pad"] = spec.pad;
  std::cout << out.dump(2) << '\n';
  return 0;
}

// ----------------------------------------------------------------- minimize

struct MinimizeArgs {
  std::string file;
  ParamFlags params;
  bool random = false;
  int n = 128, pad = 8;
  bool anneal = false;
  std::vector<double> schedule;
  MinimizeConfig cfg;
  std::string out;
};

int run_minimize(MinimizeArgs a, const std::string& out_dir) {
  VectorField v0;
  json config;
  if (a.random) {
    v0 = random_unit_field(GridSpec(a.n, a.pad), a.cfg.seed);
    config["start"] = "random";
  } else {
    if (a.file.empty()) throw std::invalid_argument("minimize: give a field file or --random");
    FieldFile f = load(a.file);
    if (const auto* m = std::get_if<SpinField>(&f.field)) {
      v0 = to_vector(*m);
    } else if (const auto* v = std::get_if<VectorField>(&f.field)) {
      v0 = *v;
    } else {
      throw InputError("minimize: scalar fields carry no magnetization");
    }
    config["start"] = a.file;
  }
  a.cfg.eta_schedule = a.anneal ? MinimizeConfig::default_schedule(v0.spec.n) : a.schedule;
  config["n"] = v0.spec.n;
  config["pad"] = v0.spec.pad;
  config["params"] = a.params.p;
  config["max_iters"] = a.cfg.max_iters;
  config["grad_tol"] = a.cfg.grad_tol;
  config["eta_schedule"] = a.cfg.eta_schedule;
  config["seed"] = a.cfg.seed;

  const EnergyBreakdown initial = total_relaxed(v0, a.params.p);
  const MinimizeResult r = minimize_F_eta(v0, a.params.p, a.cfg);
  const std::string path = resolve(out_dir, a.out, "minimized.field");
  const std::string trace = path + ".trace.csv";
  save_field(path, r.field, {{"command", "minimize"}});
  {
    std::ofstream os(trace);
    if (!os) throw InputError("cannot write '" + trace + "'");
    write_trace_csv(os, r.trace);
  }
  json summary = {{"initial", breakdown_json(initial)},
                  {"final", breakdown_json(r.energy)},
                  {"iterations", r.iterations},
                  {"converged", r.converged},
                  {"line_search_failed", r.line_search_failed}};
  write_manifest(path + ".manifest.json", "minimize", config, json::array({path, trace}), {{"summary", summary}});
  summary["field"] = path;
  summary["trace"] = trace;
  std::cout << summary.dump(2) << '\n';
  return 0;
}

// -------------------------------------------------------------------- sweep

struct SweepArgs {
  std::vector<double> mu;
  double mu_min = 1e-4, mu_max = 1e-2;
  int points = 8;
  std::string mode = "construction";
  SweepConfig cfg;
  bool no_landau = false;
  std::string out;
};

std::vector<double> log_spaced(double a, double b, int m) {
  if (m < 1) throw std::invalid_argument("--points must be >= 1");
  if (!(a > 0.0 && b >= a)) throw std::invalid_argument("need 0 < mu-min <= mu-max");
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) {
    out[i] = m == 1 ? a : std::exp(std::log(a) + (std::log(b) - std::log(a)) * i / (m - 1));
  }
  return out;
}

int run_sweep_cmd(SweepArgs a, const std::string& out_dir) {
  a.cfg.mu_list = a.mu.empty() ? log_spaced(a.mu_min, a.mu_max, a.points) : a.mu;
  a.cfg.mode = sweep_mode_from_string(a.mode);
  a.cfg.compare_normal_landau = !a.no_landau;
  const SweepResult res = run_sweep(a.cfg);
  const std::string path = resolve(out_dir, a.out, "sweep.csv");
  {
    std::ofstream os(path);
    if (!os) throw InputError("cannot write '" + path + "'");
    write_sweep_csv(os, res.records);
  }
  json config;
  to_json(config, a.cfg);
  json extra = {{"c_used", res.c}};
  try {
    const Fit f = fit_exponent(res.records, a.cfg.mode);
    extra["fit"] = {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}, {"points", f.points}};
  } catch (const std::invalid_argument&) {
    extra["fit"] = nullptr;
  }
  write_manifest(path + ".manifest.json", "sweep", config, json::array({path}), extra);
  extra["csv"] = path;
  extra["records"] = res.records.size();
  std::cout << extra.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------- fit

struct FitArgs {
  std::string csv;
  std::string mode = "construction";
  std::string pattern = "zigzag";
};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

int run_fit(const FitArgs& a) {
  std::ifstream is(a.csv);
  if (!is) throw InputError("cannot open '" + a.csv + "'");
  std::string line;
  if (!std::getline(is, line)) throw InputError("fit: empty CSV");
  const auto header = split_csv(line);
  auto column = [&](const std::string& name) -> long {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return long(i);
    }
    return -1;
  };
  const long cmu = column("mu"), ctot = column("total"), cmode = column("mode"), cpat = column("pattern");
  if (cmu < 0 || ctot < 0) throw InputError("fit: CSV needs mu and total columns");
  std::vector<double> mu, total;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (long(cells.size()) <= std::max(cmu, ctot)) throw InputError("fit: short row");
    if (cmode >= 0 && cells.at(cmode) != a.mode) continue;
    if (cpat >= 0 && cells.at(cpat) != a.pattern) continue;
    const double t = std::strtod(cells[ctot].c_str(), nullptr);
    if (!std::isfinite(t)) continue;  // skipped record
    mu.push_back(std::strtod(cells[cmu].c_str(), nullptr));
    total.push_back(t);
  }
  const Fit f = fit_exponent(mu, total);
  std::cout << json{{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}, {"points", f.points}}.dump(2)
            << '\n';
  return 0;
}

// ------------------------------------------------------------- oracle-check

struct OracleArgs {
  int n = 64, count = 20, modes = 3;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  double cg_tol = 1e-12;
};

int run_oracle(const OracleArgs& a) {
  const GridSpec spec(a.n, 2);
  json samples = json::array();
  double worst = 0.0;
  for (int s = 0; s < a.count; ++s) {
    const SymTensorField V = random_smooth_tensor(spec, a.seed + s, a.modes);
    const UnitCellReport r = unit_cell_formula_check(V, a.cg_tol);
    const double rel = std::abs(r.spectral - r.direct) / std::max(std::abs(r.direct), 1e-300);
    worst = std::max(worst, rel);
    samples.push_back({{"seed", a.seed + s},
                       {"spectral", r.spectral},
                       {"direct", r.direct},
                       {"unit_cell", r.unit_cell},
                       {"relative_gap", rel}});
  }
  std::cout << json{{"n", a.n}, {"tol", a.tol}, {"max_relative_gap", worst}, {"pass", worst <= a.tol},
                    {"samples", samples}}
                   .dump(2)
            << '\n';
  return 0;
}

// ----------------------------------------------------------------- diagnose

struct DiagnoseArgs {
  std::string file;
  BesovIndices besov;
  bool no_besov = false;
};

int run_diagnose(const DiagnoseArgs& a) {
  FieldFile f = load(a.file);
  json out = {{"field", a.file}, {"kind", field_kind(f.field)}, {"n", field_spec(f.field).n}};
  ScalarField g;
  if (const auto* m = std::get_if<SpinField>(&f.field)) {
    g = g_field(*m);
    const M0Report r = check_M0(*m);
    const SupportReport sr = spectral_support_check(*m);
    out["M0"] = {{"pass", r.pass}, {"max_line_integral", r.max_line_integral}};
    out["spectral_support"] = {{"pass", sr.pass}, {"max_axis_mode", sr.max_axis_mode}};
    out["checks_agree"] = r.pass == sr.pass;
    out["total_variation"] = total_variation(*m);
    out["magnetostriction"] = magnetostriction_energy(*m);
  } else if (const auto* v = std::get_if<VectorField>(&f.field)) {
    g = g_field(*v);
    out["magnetostriction"] = magnetostriction_energy(*v);
  } else {
    g = std::get<ScalarField>(f.field);
  }
  out["mixed_h_minus2"] = {{"reflected", mixed_h_minus2(g, Periodization::reflected)},
                           {"periodic", mixed_h_minus2(g, Periodization::periodic)}};
  out["h_minus1"] = {{"reflected", h_minus1_norm(g, Periodization::reflected)},
                     {"periodic", h_minus1_norm(g, Periodization::periodic)}};
  if (!a.no_besov) {
    const BesovReport b = besov_seminorm(g, a.besov);
    out["besov_g"] = {{"s", a.besov.s}, {"p", a.besov.p}, {"q", a.besov.q}, {"value", b.value},
                      {"j_min", b.j_min}, {"j_max", b.j_max}};
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Micromagnetics with magnetostriction on the unit square"};
  app.set_config("--config", "", "Config file (key = value, [subcommand] sections); flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);
  const char* env_dir = std::getenv(kOutDirEnv);
  std::string out_dir = env_dir != nullptr && *env_dir != '\0' ? env_dir : ".";
  app.add_option("--out-dir", out_dir, std::string("Default output directory (env ") + kOutDirEnv + ")")
      ->capture_default_str();

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a pattern and write a field file");
  construct->add_option("pattern", ca.pattern, "uniform | stripes | normal-landau | zigzag")
      ->required()
      ->check(CLI::IsMember({"uniform", "stripes", "normal-landau", "zigzag"}));
  construct->add_option("--n", ca.n, "cells per side")->capture_default_str();
  construct->add_option("--pad", ca.pad, "stray-field padding factor")->capture_default_str();
  construct->add_option("--k", ca.k, "coarse count (stripes: interfaces)")->capture_default_str();
  construct->add_option("--l", ca.l, "zig-zag refinement factor")->capture_default_str();
  construct->add_option("--well", ca.well, "uniform well label 0..3")->capture_default_str();
  construct->add_option("--normal", ca.normal, "stripes: axis | diagonal")->capture_default_str();
  construct->add_option("--wells", ca.wells, "stripes: two well labels")->expected(2)->delimiter(',');
  construct->add_option("--out", ca.out, "output field file");

  EnergyArgs ea;
  auto* energy = app.add_subcommand("energy", "Print the energy breakdown of a field file as JSON");
  energy->add_option("field", ea.file)->required();
  ea.params.add(energy);
  energy->add_flag("--sharp", ea.sharp, "evaluate F_0 (vector fields are projected to the wells)");
  energy->add_option("--pad", ea.pad, "override the stray-field padding factor");

  MinimizeArgs ma;
  auto* minimize = app.add_subcommand("minimize", "Gradient descent on F_eta");
  minimize->add_option("field", ma.file, "start field (omit with --random)");
  ma.params.add(minimize);
  minimize->add_flag("--random", ma.random, "random unit-vector start");
  minimize->add_option("--n", ma.n, "grid for --random")->capture_default_str();
  minimize->add_option("--pad", ma.pad, "padding for --random")->capture_default_str();
  minimize->add_option("--seed", ma.cfg.seed, "seed for --random")->capture_default_str();
  minimize->add_option("--max-iters", ma.cfg.max_iters, "iterations per eta stage")->capture_default_str();
  minimize->add_option("--grad-tol", ma.cfg.grad_tol)->capture_default_str();
  minimize->add_option("--eta-schedule", ma.schedule, "descending eta values")->delimiter(',');
  minimize->add_flag("--anneal", ma.anneal, "use the default schedule 1/8, 1/16, 1/32, 2/n");
  minimize->add_option("--initial-step", ma.cfg.initial_step)->capture_default_str();
  minimize->add_option("--out", ma.out, "output field file");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Zig-zag energies at optimized (k, l) over mu");
  sweep->add_option("--mu", sa.mu, "explicit mu values")->delimiter(',');
  sweep->add_option("--mu-min", sa.mu_min)->capture_default_str();
  sweep->add_option("--mu-max", sa.mu_max)->capture_default_str();
  sweep->add_option("--points", sa.points, "log-spaced points")->capture_default_str();
  sweep->add_option("--mode", sa.mode, "construction | minimize")
      ->check(CLI::IsMember({"construction", "minimize"}))
      ->capture_default_str();
  sweep->add_option("--pad", sa.cfg.pad)->capture_default_str();
  sweep->add_option("--n-min", sa.cfg.n_min)->capture_default_str();
  sweep->add_option("--n-max", sa.cfg.n_max)->capture_default_str();
  sweep->add_option("--c", sa.cfg.c, "optimize_kl prefactor (<= 0: calibrate)")->capture_default_str();
  sweep->add_option("--max-box", sa.cfg.max_box, "cap on pad * n for the stray field")->capture_default_str();
  sweep->add_option("--jobs", sa.cfg.jobs, "concurrent mu values")->capture_default_str();
  sweep->add_option("--max-iters", sa.cfg.relax.max_iters, "minimize mode")->capture_default_str();
  sweep->add_flag("--no-landau", sa.no_landau, "skip the normal Landau comparison");
  sweep->add_option("--out", sa.out, "output CSV");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Fit log(total) against log(mu) from a sweep CSV");
  fit->add_option("csv", fa.csv)->required();
  fit->add_option("--mode", fa.mode)->capture_default_str();
  fit->add_option("--pattern", fa.pattern)->capture_default_str();

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle-check", "Spectral vs finite-element elastic residuals");
  oracle->add_option("--n", oa.n)->capture_default_str();
  oracle->add_option("--count", oa.count)->capture_default_str();
  oracle->add_option("--modes", oa.modes)->capture_default_str();
  oracle->add_option("--seed", oa.seed)->capture_default_str();
  oracle->add_option("--tol", oa.tol, "relative tolerance")->capture_default_str();
  oracle->add_option("--cg-tol", oa.cg_tol)->capture_default_str();

  DiagnoseArgs da;
  auto* diagnose = app.add_subcommand("diagnose", "Lower-bound diagnostics of a field file as JSON");
  diagnose->add_option("field", da.file)->required();
  diagnose->add_option("--besov-s", da.besov.s)->capture_default_str();
  diagnose->add_option("--besov-p", da.besov.p)->capture_default_str();
  diagnose->add_option("--besov-q", da.besov.q)->capture_default_str();
  diagnose->add_flag("--no-besov", da.no_besov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (construct->parsed()) return run_construct(ca, out_dir);
    if (energy->parsed()) return run_energy(ea);
    if (minimize->parsed()) return run_minimize(ma, out_dir);
    if (sweep->parsed()) return run_sweep_cmd(sa, out_dir);
    if (fit->parsed()) return run_fit(fa);
    if (oracle->parsed()) return run_oracle(oa);
    if (diagnose->parsed()) return run_diagnose(da);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

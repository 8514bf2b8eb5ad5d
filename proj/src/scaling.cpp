#include "magstrict/scaling.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "magstrict/constructions.hpp"

namespace magstrict {

void PhysicalParams::validate() const {
  for (double x : {A, Ka, c44, lambda111, Kd, L}) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("physical parameters must be positive and finite");
    }
  }
}

ModelParams nondimensionalize(const PhysicalParams& pp) {
  pp.validate();
  const double s = pp.c44 * pp.lambda111 * pp.lambda111;
  ModelParams p;
  p.mu = std::sqrt(pp.A * pp.Ka) / (s * pp.L);
  p.eta = std::sqrt(pp.A / pp.Ka) / pp.L;
  p.kd_scale = pp.Kd / s;
  return p;
}

std::string to_string(SweepMode m) { return m == SweepMode::construction ? "construction" : "minimize"; }

SweepMode sweep_mode_from_string(const std::string& s) {
  if (s == "construction") return SweepMode::construction;
  if (s == "minimize") return SweepMode::minimize;
  throw std::invalid_argument("unknown sweep mode '" + s + "'");
}

void to_json(nlohmann::json& j, const SweepConfig& c) {
  j = {{"mu_list", c.mu_list},
       {"mode", to_string(c.mode)},
       {"pad", c.pad},
       {"n_min", c.n_min},
       {"n_max", c.n_max},
       {"max_box", c.max_box},
       {"c", c.c},
       {"calibration_n", c.calibration_n},
       {"compare_normal_landau", c.compare_normal_landau},
       {"landau_k", c.landau_k},
       {"landau_n_max", c.landau_n_max},
       {"jobs", c.jobs},
       {"eta", c.eta},
       {"relax",
        {{"max_iters", c.relax.max_iters},
         {"grad_tol", c.relax.grad_tol},
         {"eta_schedule", c.relax.eta_schedule},
         {"armijo", c.relax.armijo},
         {"shrink", c.relax.shrink},
         {"grow", c.relax.grow},
         {"initial_step", c.relax.initial_step},
         {"max_backtracks", c.relax.max_backtracks},
         {"seed", c.relax.seed}}}};
}

double calibrate_c(int n, int pad) {
  const GridSpec spec(n, pad);
  const SpinField m = build_zigzag({4, 4}, spec);
  ModelParams p;
  const double nonlocal = magnetostatic_energy(m, p) + magnetostriction_energy(m);
  return nonlocal * 16.0;
}

int sweep_grid(int k, int l, int n_min, int n_max) {
  const std::int64_t step = 2 * std::int64_t(k);
  const std::int64_t want = std::max<std::int64_t>(n_min, 8 * std::int64_t(k) * l);
  std::int64_t n = (want + step - 1) / step * step;
  if (n > n_max) n = n_max / step * step;
  if (n < 8 || std::int64_t(k) * l > n / 4) return 0;
  return int(n);
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<SweepRecord> sweep_one(double mu, const SweepConfig& cfg, double c) {
  std::vector<SweepRecord> out;
  ModelParams p;
  p.mu = mu;
  p.eta = cfg.eta;
  const KLChoice kl = optimize_kl(mu, c);
  SweepRecord rec;
  rec.mu = mu;
  rec.k = kl.k;
  rec.l = kl.l;
  rec.pad = cfg.pad;
  rec.pattern = "zigzag";
  rec.mode = SweepMode::construction;
  rec.n = sweep_grid(kl.k, kl.l, cfg.n_min, cfg.n_max);
  if (rec.n == 0) {
    rec.skipped = true;
    rec.reason = "unresolvable: l*k = " + std::to_string(kl.k * kl.l) + " needs n >= " +
                 std::to_string(4 * kl.k * kl.l) + " > n_max";
    out.push_back(rec);
  } else {
    const auto t0 = std::chrono::steady_clock::now();
    rec.pad = std::max(2, std::min(cfg.pad, cfg.max_box / rec.n));
    const GridSpec spec(rec.n, rec.pad);
    const SpinField m = build_zigzag({kl.k, kl.l}, spec);
    rec.energies = total_sharp(m, p);
    rec.seconds = seconds_since(t0);
    out.push_back(rec);
    if (cfg.mode == SweepMode::minimize) {
      SweepRecord mrec = rec;
      mrec.mode = SweepMode::minimize;
      const auto t1 = std::chrono::steady_clock::now();
      const MinimizeResult r = minimize_F_eta(to_vector(m), p, cfg.relax);
      mrec.energies = r.energy;
      mrec.seconds = seconds_since(t1);
      if (r.line_search_failed) mrec.reason = "line search failed; best iterate";
      out.push_back(mrec);
    }
  }

  if (cfg.compare_normal_landau) {
    // The normal Landau state has a single coarse scale, so its energy is
    // insensitive to n once the bands are resolved.
    const auto t0 = std::chrono::steady_clock::now();
    const int n = std::min(rec.n > 0 ? rec.n : cfg.n_max, cfg.landau_n_max);
    const GridSpec spec(n - n % 2, cfg.pad);
    SweepRecord best;
    best.skipped = true;
    for (int k : cfg.landau_k) {
      if (k < 1 || 8 * k > spec.n) continue;
      const EnergyBreakdown e = total_sharp(build_normal_landau(k, spec), p);
      if (best.skipped || e.total < best.energies.total) {
        best.skipped = false;
        best.k = k;
        best.energies = e;
      }
    }
    best.mu = mu;
    best.l = 0;
    best.n = spec.n;
    best.pad = cfg.pad;
    best.pattern = "normal_landau";
    best.mode = SweepMode::construction;
    best.seconds = seconds_since(t0);
    if (best.skipped) best.reason = "no resolvable k";
    out.push_back(best);
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.pad < 2) throw std::invalid_argument("sweep: pad must be >= 2");
  if (cfg.max_box < 16) throw std::invalid_argument("sweep: max_box must be >= 16");
  if (cfg.jobs < 1) throw std::invalid_argument("sweep: jobs must be >= 1");
  if (cfg.n_min < 8 || cfg.n_max < cfg.n_min) throw std::invalid_argument("sweep: bad n range");
  for (double mu : cfg.mu_list) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("sweep: mu values must lie in (0, 1)");
  }
  SweepResult out;
  if (cfg.mu_list.empty()) return out;
  out.c = cfg.c > 0.0 ? cfg.c : calibrate_c(cfg.calibration_n, cfg.pad);

  // Workers share nothing; records are merged in mu-list order.
  std::vector<std::vector<SweepRecord>> parts(cfg.mu_list.size());
  std::vector<std::exception_ptr> errors(cfg.mu_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cfg.mu_list.size();) {
      try {
        parts[i] = sweep_one(cfg.mu_list[i], cfg, out.c);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(cfg.jobs, int(cfg.mu_list.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.records.insert(out.records.end(), parts[i].begin(), parts[i].end());
  }
  return out;
}

Fit fit_exponent(const std::vector<double>& mu, const std::vector<double>& total) {
  if (mu.size() != total.size()) throw std::invalid_argument("fit: size mismatch");
  if (mu.size() < 3) throw std::invalid_argument("fit: need at least 3 points");
  const std::size_t m = mu.size();
  double sx = 0, sy = 0;
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(mu[i] > 0.0) || !(total[i] > 0.0)) throw std::invalid_argument("fit: values must be positive");
    x[i] = std::log(mu[i]);
    y[i] = std::log(total[i]);
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit: all mu values are equal");
  Fit f;
  f.points = int(m);
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

Fit fit_exponent(const std::vector<SweepRecord>& records, SweepMode mode) {
  std::vector<double> mu, total;
  for (const auto& r : records) {
    if (r.skipped || r.pattern != "zigzag" || r.mode != mode) continue;
    mu.push_back(r.mu);
    total.push_back(r.energies.total);
  }
  return fit_exponent(mu, total);
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "mu,k,l,n,pad,mode,wall,potential,magnetostatic,magnetostriction,total,seconds,pattern,note\n";
  char buf[64];
  auto real = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  for (const auto& r : records) {
    const auto& e = r.energies;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto val = [&](double x) { return real(r.skipped ? nan : x); };
    os << real(r.mu) << ',' << r.k << ',' << r.l << ',' << r.n << ',' << r.pad << ','
       << to_string(r.mode) << ',' << val(e.exchange_or_wall) << ',' << val(e.potential) << ','
       << val(e.magnetostatic) << ',' << val(e.magnetostriction) << ',' << val(e.total) << ','
       << real(r.seconds) << ',' << r.pattern << ',' << r.reason << '\n';
  }
}

std::string config_hash(const nlohmann::json& config) {
  const std::string s = config.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace magstrict

#pragma once

// Parameter sweeps over mu, exponent fits and the physical parameter map.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "magstrict/energy.hpp"
#include "magstrict/relax.hpp"

namespace magstrict {

struct PhysicalParams {
  double A = 1.0;          // exchange constant
  double Ka = 1.0;         // anisotropy
  double c44 = 1.0;        // shear modulus
  double lambda111 = 1.0;  // magnetostriction constant
  double Kd = 1.0;         // magnetostatic coefficient
  double L = 1.0;          // sample size

  void validate() const;
};

/// With s = c44 lambda111^2:  mu = sqrt(A Ka) / (s L),  eta = sqrt(A / Ka) / L,
/// kd_scale = Kd / s. For L = 1 these solve mu eta = A / s, mu / eta = Ka / s.
ModelParams nondimensionalize(const PhysicalParams& pp);

enum class SweepMode { construction, minimize };

struct SweepConfig {
  std::vector<double> mu_list;
  SweepMode mode = SweepMode::construction;
  int pad = 4;
  int n_min = 128;
  int n_max = 4096;
  int max_box = 8192;      // cap on pad * n; pad drops toward 2 on large grids
  double c = 0.0;          // optimize_kl prefactor; <= 0 means calibrate
  int calibration_n = 128;
  bool compare_normal_landau = true;
  std::vector<int> landau_k = {1, 2, 3, 4, 6, 8, 12, 16};
  int landau_n_max = 512;
  MinimizeConfig relax;    // minimize mode only; eta from params.eta if schedule empty
  double eta = 1.0 / 32.0; // used for minimize mode when relax.eta_schedule is empty
  int jobs = 1;            // concurrent mu values
};

void to_json(nlohmann::json& j, const SweepConfig& c);

struct SweepRecord {
  double mu = 0.0;
  int k = 0, l = 0;
  int n = 0, pad = 0;
  std::string pattern;  // "zigzag" or "normal_landau"
  SweepMode mode = SweepMode::construction;
  EnergyBreakdown energies;
  double seconds = 0.0;
  bool skipped = false;
  std::string reason;
};

/// Measured (magnetostatic + magnetostriction) k l of the zig-zag state at
/// k = l = 4 on an n-cell grid.
double calibrate_c(int n, int pad);

/// Grid for a zig-zag with parameters (k, l): the smallest multiple of 2k
/// that is at least max(n_min, 8 l k), reduced to the largest multiple of
/// 2k not above n_max when needed. Returns 0 when l k > n / 4 even then.
int sweep_grid(int k, int l, int n_min, int n_max);

struct SweepResult {
  double c = 0.0;  // prefactor actually used
  std::vector<SweepRecord> records;
};

SweepResult run_sweep(const SweepConfig& cfg);

struct Fit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
  int points = 0;
};

/// Least squares of log(total) against log(mu). Throws std::invalid_argument
/// with fewer than 3 points or a non-positive value.
Fit fit_exponent(const std::vector<double>& mu, const std::vector<double>& total);
/// Uses the non-skipped zig-zag records of the given mode.
Fit fit_exponent(const std::vector<SweepRecord>& records, SweepMode mode = SweepMode::construction);

std::string to_string(SweepMode m);
SweepMode sweep_mode_from_string(const std::string& s);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);

/// 64-bit FNV-1a of the compact JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

}  // namespace magstrict

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "plexsim/errors.hpp"

namespace plexsim {

struct ModeLabel {
  int l = 0;
  int m = 0;
  std::string str() const;
  bool operator==(const ModeLabel&) const = default;
};

// One quasinormal mode in canonical units.  g_per_debye is the coupling
// strength per unit dipole moment; it is either given directly or derived
// from a mode volume plus the dimensionless mode-field value at the
// emitter position (see coupling_from_field).
struct ModeParams {
  ModeLabel label;
  double omega = 0.0;        // resonance, rad/fs (> 0)
  double kappa = 0.0;        // energy decay rate, rad/fs (>= 0)
  double g_per_debye = 0.0;  // rad/fs per Debye (>= 0)
  std::optional<double> mode_volume_nm3;
  std::optional<std::complex<double>> field_value;
};

struct EmitterParams {
  double omega_e = 0.0;   // transition frequency, rad/fs (> 0)
  double mu_debye = 0.0;  // dipole moment magnitude, Debye (> 0)
};

struct TimeGrid {
  double t_max_fs = 200.0;
  int samples = 16384;
  std::vector<double> times() const;  // uniform, t0 = 0, t_last = t_max_fs
  double dt() const { return t_max_fs / (samples - 1); }
};

// Single source of truth for a run.  Immutable after load_config; all
// transformations (scale_couplings, truncation) return copies.
struct SystemConfig {
  EmitterParams emitter;
  std::vector<ModeParams> modes;
  bool lossless = false;
  TimeGrid time;

  int n_modes() const { return static_cast<int>(modes.size()); }
  // Canonical serialized form (fixed key order, %.17g floats); two configs
  // are identical iff their canonical forms match byte for byte.
  std::string canonical() const;
  std::string hash() const;  // FNV-1a 64 of canonical(), hex
};

// |sqrt(omega / (hbar eps0 V)) * mu * E| in rad/fs.  omega in rad/fs,
// V in nm^3, mu in Debye, E dimensionless.  The magnitude is taken because
// per-mode coupling phases are gauged away for a single emitter.
double coupling_from_field(double omega, double mode_volume_nm3, double mu_debye,
                           std::complex<double> field_value);

// Parse + validate a JSON config document (schema in README).
SystemConfig load_config(const std::string& text);
SystemConfig load_config_file(const std::string& path);

// New config with the emitter dipole moment replaced; effective couplings
// g = g_per_debye * mu scale linearly.
SystemConfig scale_couplings(const SystemConfig& config, double mu_new_debye);

// Detunings Delta_xi = omega_e - omega_xi, mode-list order, rad/fs.
std::vector<double> detunings(const SystemConfig& config);

// Effective couplings g_xi = g_per_debye * mu, mode-list order, rad/fs.
std::vector<double> couplings(const SystemConfig& config);

// First `count` modes only (truncation studies).  Throws ConfigError if
// count is not in [1, n].
SystemConfig truncate_modes(const SystemConfig& config, int count);

}  // namespace plexsim

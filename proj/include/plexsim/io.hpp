#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plexsim/analytic.hpp"
#include "plexsim/spectrum.hpp"
#include "plexsim/sweep.hpp"
#include "plexsim/trace.hpp"

namespace plexsim {

inline constexpr const char* kToolVersion = "plexsim 0.1.0";

// CSV, header `t_fs,population`, %.17g throughout.
void write_population_csv(const std::string& path, const PopulationTrace& trace);
PopulationTrace read_population_csv(const std::string& path);

// CSV, header `omega_rad_per_fs,freq_thz,magnitude`; magnitudes normalized
// to max = 1.
void write_spectrum_csv(const std::string& path, const Spectrum& spectrum);

nlohmann::json peakset_json(const PeakSet& peaks);
nlohmann::json decomposition_json(const SpectralDecomposition& d);
nlohmann::json regime_json(const RegimeReport& report);

// CSV, header `mu_debye,dominant_freq_thz,regime,peak_count`.
void write_sweep_csv(const std::string& path, const SweepResult& sweep);
nlohmann::json sweep_points_json(const SweepResult& sweep);

// Heatmap matrix: header row `mu_debye,<freq_thz...>`, one row per mu with
// normalized spectrum magnitudes (requires sweep run with keep_spectra).
void write_heatmap_csv(const std::string& path, const SweepResult& sweep);

struct RunManifest {
  std::string command;
  std::string config_hash;
  nlohmann::json solver;  // tolerances, window, thresholds, path, ...
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;  // adds version + timestamp
};

void write_manifest(const std::string& path, const RunManifest& manifest);
void write_json(const std::string& path, const nlohmann::json& j);
void write_text(const std::string& path, const std::string& text);

}  // namespace plexsim

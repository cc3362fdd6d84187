#include "plexsim/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "plexsim/errors.hpp"
#include "plexsim/units.hpp"

namespace plexsim {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path);
  return out;
}

}  // namespace

void write_population_csv(const std::string& path, const PopulationTrace& trace) {
  auto out = open_out(path);
  out << "t_fs,population\n";
  for (size_t i = 0; i < trace.times.size(); ++i)
    out << fmt(trace.times[i]) << "," << fmt(trace.values[i]) << "\n";
}

PopulationTrace read_population_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t_fs,population", 0) != 0)
    throw ConfigError(path + ": expected header t_fs,population");
  PopulationTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError(path + ": malformed row: " + line);
    trace.times.push_back(std::stod(line.substr(0, comma)));
    trace.values.push_back(std::stod(line.substr(comma + 1)));
  }
  if (trace.times.empty()) throw ConfigError(path + ": no samples");
  return trace;
}

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum) {
  auto out = open_out(path);
  out << "omega_rad_per_fs,freq_thz,magnitude\n";
  const auto normalized = spectrum.normalized();
  for (size_t k = 0; k < spectrum.omegas.size(); ++k)
    out << fmt(spectrum.omegas[k]) << "," << fmt(units::thz_from_rad_fs(spectrum.omegas[k]))
        << "," << fmt(normalized[k]) << "\n";
}

nlohmann::json peakset_json(const PeakSet& peaks) {
  nlohmann::json j;
  j["rel_threshold"] = peaks.rel_threshold;
  j["min_separation_bins"] = peaks.min_separation_bins;
  j["bin_width_rad_per_fs"] = peaks.bin_width;
  j["peaks"] = nlohmann::json::array();
  for (const auto& p : peaks.peaks)
    j["peaks"].push_back({{"omega_rad_per_fs", p.omega},
                          {"freq_thz", units::thz_from_rad_fs(p.omega)},
                          {"magnitude", p.magnitude},
                          {"omega_bin_rad_per_fs", p.omega_bin},
                          {"magnitude_bin", p.magnitude_bin}});
  return j;
}

nlohmann::json decomposition_json(const SpectralDecomposition& d) {
  nlohmann::json j;
  j["metadata"] = {{"units", "rad/fs"},
                   {"ordering", "lambda_n < ... < lambda_1 < lambda_{n+1}"},
                   {"layout", "index j-1 holds lambda_j; last entry is lambda_{n+1}"}};
  j["lambdas"] = d.lambdas;
  j["alphas"] = d.alphas;
  j["omegas"] = d.omegas;
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : frequency_components(d))
    comps.push_back({{"frequency_rad_per_fs", c.frequency},
                     {"freq_thz", units::thz_from_rad_fs(c.frequency)},
                     {"amplitude", c.amplitude},
                     {"kind", c.kind == FrequencyComponent::Kind::mode ? "mode" : "interference"},
                     {"j", c.j},
                     {"k", c.k}});
  j["components"] = std::move(comps);
  return j;
}

nlohmann::json regime_json(const RegimeReport& report) {
  nlohmann::json j;
  j["label"] = region_name(report.label);
  j["threshold_ratio"] = report.threshold_ratio;
  if (!report.note.empty()) j["note"] = report.note;
  j["pairs"] = nlohmann::json::array();
  for (const auto& p : report.pairs)
    j["pairs"].push_back({{"index", p.index},
                          {"g", p.g},
                          {"gap", p.gap},
                          {"abs_delta_next", p.abs_delta_next},
                          {"ratio_single", p.ratio_single},
                          {"ratio_collective", p.ratio_collective},
                          {"region1", p.region1},
                          {"region2", p.region2},
                          {"region3", p.region3}});
  return j;
}

void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
  auto out = open_out(path);
  out << "mu_debye,dominant_freq_thz,regime,peak_count\n";
  for (const auto& p : sweep.points)
    out << fmt(p.mu) << "," << fmt(units::thz_from_rad_fs(p.dominant_omega)) << ","
        << region_name(p.regime) << "," << p.peaks.peaks.size() << "\n";
}

nlohmann::json sweep_points_json(const SweepResult& sweep) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& p : sweep.points)
    j.push_back({{"mu_debye", p.mu},
                 {"dominant_freq_thz", units::thz_from_rad_fs(p.dominant_omega)},
                 {"regime", region_name(p.regime)},
                 {"branch", branch_name(p.branch)},
                 {"catalog_omega1_thz", units::thz_from_rad_fs(p.catalog_omega1)},
                 {"catalog_omegan_thz", units::thz_from_rad_fs(p.catalog_omegan)},
                 {"peaks", peakset_json(p.peaks)}});
  return j;
}

void write_heatmap_csv(const std::string& path, const SweepResult& sweep) {
  for (const auto& p : sweep.points)
    if (p.spectrum_normalized.empty())
      throw ConfigError("heatmap export needs a sweep run with keep_spectra");
  auto out = open_out(path);
  out << "mu_debye";
  for (double omega : sweep.omega_grid) out << "," << fmt(units::thz_from_rad_fs(omega));
  out << "\n";
  for (const auto& p : sweep.points) {
    out << fmt(p.mu);
    for (double m : p.spectrum_normalized) out << "," << fmt(m);
    out << "\n";
  }
}

nlohmann::json RunManifest::to_json() const {
  const auto now = std::chrono::system_clock::now();
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(
                           now.time_since_epoch())
                           .count();
  nlohmann::json j;
  j["tool"] = kToolVersion;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["solver"] = solver;
  j["outputs"] = outputs;
  j["timestamp_unix"] = seconds;
  return j;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  write_json(path, manifest.to_json());
}

void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

}  // namespace plexsim

#include "plexsim/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "plexsim/units.hpp"

namespace plexsim {

using nlohmann::json;

std::string ModeLabel::str() const {
  return "(" + std::to_string(l) + std::to_string(m) + ")";
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(samples);
  const double step = dt();
  for (int i = 0; i < samples; ++i) t[i] = step * i;
  t.back() = t_max_fs;
  return t;
}

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

double require_number(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key)) fail(ctx + ": missing field \"" + key + "\"");
  if (!j.at(key).is_number()) fail(ctx + ": field \"" + key + "\" must be a number");
  return j.at(key).get<double>();
}

void validate(const SystemConfig& config) {
  if (config.emitter.omega_e <= 0.0) fail("emitter: omega must be > 0");
  if (config.emitter.mu_debye <= 0.0) fail("emitter: mu must be > 0");
  if (config.modes.empty()) fail("empty mode list");
  if (config.time.t_max_fs <= 0.0) fail("time: t_max_fs must be > 0");
  if (config.time.samples < 2) fail("time: samples must be >= 2");

  for (const auto& m : config.modes) {
    const std::string ctx = "mode " + m.label.str();
    if (m.omega <= 0.0) fail(ctx + ": omega must be > 0");
    if (m.kappa < 0.0) fail(ctx + ": kappa must be >= 0");
    if (m.g_per_debye < 0.0) fail(ctx + ": coupling must be >= 0");
    if (!std::isfinite(m.omega) || !std::isfinite(m.kappa) || !std::isfinite(m.g_per_debye))
      fail(ctx + ": non-finite parameter");
    if (m.mode_volume_nm3 && m.field_value) {
      const double derived = coupling_from_field(m.omega, *m.mode_volume_nm3,
                                                 1.0, *m.field_value);
      const double scale = std::max(std::abs(derived), std::abs(m.g_per_debye));
      if (scale > 0.0 && std::abs(derived - m.g_per_debye) > 1e-12 * scale)
        fail(ctx + ": g_per_debye inconsistent with mode_volume/field inputs");
    }
  }

  // The analytic solution requires pairwise distinct detunings, which for a
  // fixed emitter frequency means pairwise distinct mode frequencies.
  const auto d = detunings(config);
  double scale = std::abs(config.emitter.omega_e);
  for (double x : d) scale = std::max(scale, std::abs(x));
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j)
      if (std::abs(d[i] - d[j]) <= 1e-12 * scale)
        fail("degenerate detunings: modes " + config.modes[i].label.str() +
             " and " + config.modes[j].label.str());
}

ModeParams parse_mode(const json& jm, size_t index) {
  ModeParams m;
  const std::string ctx = "modes[" + std::to_string(index) + "]";
  if (!jm.is_object()) fail(ctx + ": must be an object");

  if (jm.contains("label")) {
    const auto& lab = jm.at("label");
    if (!lab.is_array() || lab.size() != 2 || !lab[0].is_number_integer() ||
        !lab[1].is_number_integer())
      fail(ctx + ": label must be an [l, m] integer pair");
    m.label = {lab[0].get<int>(), lab[1].get<int>()};
  } else {
    m.label = {static_cast<int>(index) + 1, 0};
  }

  m.omega = units::rad_fs_from_thz(require_number(jm, "omega_thz", ctx));
  m.kappa = units::rad_fs_from_thz(require_number(jm, "kappa_thz", ctx));

  const bool has_direct = jm.contains("g_per_debye_thz");
  const bool has_raw = jm.contains("mode_volume_nm3") || jm.contains("field_value");
  if (has_raw) {
    const double vol = require_number(jm, "mode_volume_nm3", ctx);
    std::complex<double> field;
    if (!jm.contains("field_value")) fail(ctx + ": missing field \"field_value\"");
    const auto& fv = jm.at("field_value");
    if (fv.is_number()) {
      field = fv.get<double>();
    } else if (fv.is_array() && fv.size() == 2 && fv[0].is_number() && fv[1].is_number()) {
      field = {fv[0].get<double>(), fv[1].get<double>()};
    } else {
      fail(ctx + ": field_value must be a number or [re, im] pair");
    }
    m.mode_volume_nm3 = vol;
    m.field_value = field;
    m.g_per_debye = coupling_from_field(m.omega, vol, 1.0, field);
  }
  if (has_direct) {
    m.g_per_debye = units::rad_fs_from_thz(require_number(jm, "g_per_debye_thz", ctx));
  }
  if (!has_direct && !has_raw)
    fail(ctx + ": needs g_per_debye_thz or mode_volume_nm3 + field_value");
  return m;
}

}  // namespace

double coupling_from_field(double omega, double mode_volume_nm3, double mu_debye,
                           std::complex<double> field_value) {
  if (omega <= 0.0) throw ConfigError("coupling_from_field: omega must be > 0");
  if (mode_volume_nm3 == 0.0) throw ConfigError("coupling_from_field: mode volume is zero");
  if (!std::isfinite(field_value.real()) || !std::isfinite(field_value.imag()))
    throw ConfigError("coupling_from_field: non-finite field value");

  const double omega_si = omega * 1e15;                    // rad/s
  const double vol_si = mode_volume_nm3 * 1e-27;           // m^3
  const double mu_si = mu_debye * units::debye_C_m;        // C m
  const double g_si = std::sqrt(omega_si / (units::hbar_J_s * units::eps0_F_m *
                                            std::abs(vol_si))) *
                      mu_si * std::abs(field_value);       // rad/s
  const double g = g_si * 1e-15;                           // rad/fs
  if (!std::isfinite(g)) throw ConfigError("coupling_from_field: non-finite result");
  return g;
}

SystemConfig load_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) fail("config: top level must be an object");
  if (!doc.contains("emitter") || !doc.at("emitter").is_object())
    fail("config: missing \"emitter\" object");
  if (!doc.contains("modes") || !doc.at("modes").is_array())
    fail("config: missing \"modes\" array");
  if (doc.at("modes").empty()) fail("empty mode list");

  SystemConfig config;
  const auto& je = doc.at("emitter");
  config.emitter.omega_e = units::rad_fs_from_thz(require_number(je, "omega_thz", "emitter"));
  config.emitter.mu_debye = require_number(je, "mu_debye", "emitter");

  size_t index = 0;
  for (const auto& jm : doc.at("modes")) config.modes.push_back(parse_mode(jm, index++));

  if (doc.contains("lossless")) {
    if (!doc.at("lossless").is_boolean()) fail("config: \"lossless\" must be a boolean");
    config.lossless = doc.at("lossless").get<bool>();
  }
  if (doc.contains("time")) {
    const auto& jt = doc.at("time");
    config.time.t_max_fs = require_number(jt, "t_max_fs", "time");
    if (!jt.contains("samples") || !jt.at("samples").is_number_integer())
      fail("time: missing integer field \"samples\"");
    config.time.samples = jt.at("samples").get<int>();
  }

  validate(config);
  return config;
}

SystemConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

SystemConfig scale_couplings(const SystemConfig& config, double mu_new_debye) {
  if (mu_new_debye <= 0.0) throw ConfigError("scale_couplings: mu must be > 0");
  SystemConfig out = config;
  out.emitter.mu_debye = mu_new_debye;
  return out;
}

std::vector<double> detunings(const SystemConfig& config) {
  std::vector<double> d;
  d.reserve(config.modes.size());
  for (const auto& m : config.modes) d.push_back(config.emitter.omega_e - m.omega);
  return d;
}

std::vector<double> couplings(const SystemConfig& config) {
  std::vector<double> g;
  g.reserve(config.modes.size());
  for (const auto& m : config.modes) g.push_back(m.g_per_debye * config.emitter.mu_debye);
  return g;
}

SystemConfig truncate_modes(const SystemConfig& config, int count) {
  if (count < 1 || count > config.n_modes())
    throw ConfigError("truncate_modes: count " + std::to_string(count) +
                      " outside [1, " + std::to_string(config.n_modes()) + "]");
  SystemConfig out = config;
  out.modes.resize(count);
  return out;
}

std::string SystemConfig::canonical() const {
  std::string s;
  s += "emitter{omega=" + fmt_double(emitter.omega_e);
  s += ",mu=" + fmt_double(emitter.mu_debye) + "}";
  for (const auto& m : modes) {
    s += "mode{label=" + m.label.str();
    s += ",omega=" + fmt_double(m.omega);
    s += ",kappa=" + fmt_double(m.kappa);
    s += ",g=" + fmt_double(m.g_per_debye) + "}";
  }
  s += "lossless=" + std::string(lossless ? "1" : "0");
  s += ",t_max=" + fmt_double(time.t_max_fs);
  s += ",samples=" + std::to_string(time.samples);
  return s;
}

std::string SystemConfig::hash() const {
  // FNV-1a 64
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace plexsim

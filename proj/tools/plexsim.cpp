// plexsim — simulate a two-level emitter coupled to lossy bosonic modes and
// analyze the resulting population dynamics (traces, spectra, dipole sweeps).
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plexsim/analytic.hpp"
#include "plexsim/dynamics.hpp"
#include "plexsim/io.hpp"
#include "plexsim/model.hpp"
#include "plexsim/sweep.hpp"
#include "plexsim/units.hpp"

using namespace plexsim;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitVerify = 3;

int default_jobs() {
  if (const char* env = std::getenv("PLEXSIM_JOBS")) {
    const int jobs = std::atoi(env);
    if (jobs > 0) return jobs;
  }
  return 0;  // sweep picks hardware concurrency
}

std::string out_path(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

PopulationTrace simulate_path(const SystemConfig& config, SolverPath path, double tol) {
  const auto grid = config.time.times();
  PopulationTrace trace;
  switch (path) {
    case SolverPath::analytic: {
      if (!config.lossless)
        throw ConfigError("analytic path requires lossless (set \"lossless\": true)");
      trace = population_closed_form(
          SpectralDecomposition::solve(secular_from_config(config)), grid);
      break;
    }
    case SolverPath::lindblad:
      trace = emitter_population(propagate_lindblad(build_lindblad(config), grid, tol));
      break;
    case SolverPath::schrodinger:
      trace = emitter_population(
          propagate_schrodinger(build_hamiltonian(config, config.lossless), grid, tol));
      break;
  }
  trace.meta.config_hash = config.hash();
  trace.meta.tol = tol;
  return trace;
}

double max_abs_difference(const PopulationTrace& a, const PopulationTrace& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

int cmd_simulate(const std::string& config_path, const std::string& path_name,
                 const std::string& out_dir, double tol, bool verify) {
  const auto config = load_config_file(config_path);
  const auto path = solver_path_from_name(path_name);
  const auto trace = simulate_path(config, path, tol);

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.config_hash = config.hash();
  manifest.solver = {{"path", path_name}, {"tol", tol},
                     {"t_max_fs", config.time.t_max_fs},
                     {"samples", config.time.samples},
                     {"lossless", config.lossless}};

  write_population_csv(out_path(out_dir, "population.csv"), trace);
  manifest.outputs.push_back("population.csv");
  if (path == SolverPath::analytic) {
    write_json(out_path(out_dir, "decomposition.json"),
               decomposition_json(
                   SpectralDecomposition::solve(secular_from_config(config))));
    manifest.outputs.push_back("decomposition.json");
  }

  int exit_code = kExitOk;
  if (verify) {
    // Cross-path check: closed form vs ODE when lossless, full master
    // equation vs effective Hamiltonian when lossy.
    const auto reference = config.lossless
                               ? simulate_path(config, SolverPath::analytic, tol)
                               : simulate_path(config, SolverPath::lindblad, tol);
    const auto ode = path == SolverPath::schrodinger
                         ? trace
                         : simulate_path(config, SolverPath::schrodinger, tol);
    const double diff = max_abs_difference(reference, ode);
    manifest.solver["verify_max_abs_diff"] = diff;
    manifest.solver["verify_reference"] = config.lossless ? "analytic" : "lindblad";
    std::cout << "verify: max |difference| = " << diff << "\n";
    if (!(diff <= 1e-6)) {
      std::cerr << "verification failed: cross-path difference " << diff << " > 1e-6\n";
      exit_code = kExitVerify;
    }
  }

  write_manifest(out_path(out_dir, "manifest.json"), manifest);
  std::cout << "wrote " << out_dir << "/population.csv (" << trace.values.size()
            << " samples, path " << path_name << ")\n";
  return exit_code;
}

int cmd_spectrum(const std::string& input_path, const std::string& window_name_in,
                 double threshold, int dc_cut_bins, std::vector<int> l_max_list,
                 const std::string& out_dir, double tol, bool verify) {
  const Window window = window_from_name(window_name_in);

  RunManifest manifest;
  manifest.command = "spectrum";
  manifest.solver = {{"window", window_name_in}, {"threshold", threshold},
                     {"dc_cut_bins", dc_cut_bins}, {"tol", tol}};

  int exit_code = kExitOk;
  const bool is_trace = input_path.size() > 4 &&
                        input_path.substr(input_path.size() - 4) == ".csv";
  if (is_trace) {
    const auto trace = read_population_csv(input_path);
    const auto spectrum =
        remove_dc(fft_population(trace, window), dc_cut_bins);
    const auto peaks = detect_peaks(spectrum, threshold);
    write_spectrum_csv(out_path(out_dir, "spectrum.csv"), spectrum);
    write_json(out_path(out_dir, "peaks.json"), peakset_json(peaks));
    manifest.outputs = {"spectrum.csv", "peaks.json"};
    std::cout << "spectrum: " << peaks.peaks.size() << " peaks above "
              << threshold * 100 << "% of max\n";
  } else {
    const auto config = load_config_file(input_path);
    manifest.config_hash = config.hash();
    if (l_max_list.empty()) l_max_list = {config.n_modes()};

    for (int l_max : l_max_list) {
      const auto truncated = truncate_modes(config, l_max);
      const auto trace = simulate_path(truncated, SolverPath::schrodinger, tol);
      auto raw = fft_population(trace, window);
      const int cut = std::max(
          dc_cut_bins,
          effective_dc_cut_bins(SpectrumOptions{}, truncated, raw.bin_width()));
      const auto spectrum = remove_dc(std::move(raw), cut);
      const auto peaks = detect_peaks(spectrum, threshold);
      const std::string suffix = "_l" + std::to_string(l_max);
      write_spectrum_csv(out_path(out_dir, "spectrum" + suffix + ".csv"), spectrum);
      write_json(out_path(out_dir, "peaks" + suffix + ".json"), peakset_json(peaks));
      manifest.outputs.push_back("spectrum" + suffix + ".csv");
      manifest.outputs.push_back("peaks" + suffix + ".json");
      std::cout << "l_max " << l_max << ": " << peaks.peaks.size() << " peaks, dominant "
                << units::thz_from_rad_fs(dominant_frequency(peaks)) << " THz\n";

      if (verify) {
        if (!truncated.lossless) {
          std::cerr << "verification requires a lossless config (catalog comparison)\n";
          exit_code = kExitVerify;
          continue;
        }
        // Every detected peak above 5% of max must sit within one bin of a
        // catalog component.
        const auto catalog = frequency_components(
            SpectralDecomposition::solve(secular_from_config(truncated)));
        const double top = peaks.peaks.empty() ? 0.0 : peaks.peaks.front().magnitude;
        for (const auto& p : peaks.peaks) {
          if (p.magnitude < 0.05 * top) continue;
          double nearest = std::numeric_limits<double>::infinity();
          for (const auto& c : catalog)
            nearest = std::min(nearest, std::abs(p.omega - c.frequency));
          if (nearest > spectrum.bin_width()) {
            std::cerr << "verification failed at l_max " << l_max << ": peak at "
                      << units::thz_from_rad_fs(p.omega) << " THz is " << nearest
                      << " rad/fs from the nearest catalog line\n";
            exit_code = kExitVerify;
          }
        }
      }
    }
  }

  write_manifest(out_path(out_dir, "manifest.json"), manifest);
  return exit_code;
}

int cmd_sweep(const std::string& config_path, double mu_min, double mu_max, int mu_steps,
              bool lossless, const std::string& path_name, double threshold,
              const std::string& window_name_in, int jobs, double refine_tol,
              const std::string& out_dir) {
  const auto config = load_config_file(config_path);
  if (!(mu_min > 0.0) || !(mu_max > mu_min) || mu_steps < 3)
    throw ConfigError("sweep: need 0 < mu-min < mu-max and at least 3 steps");

  std::vector<double> grid(mu_steps);
  for (int i = 0; i < mu_steps; ++i)
    grid[i] = mu_min + (mu_max - mu_min) * i / (mu_steps - 1);

  SpectrumOptions options;
  options.window = window_from_name(window_name_in);
  options.rel_threshold = threshold;

  const auto path = solver_path_from_name(path_name);
  const auto sweep = sweep_dipole(config, grid, path, options, lossless, jobs, true);
  const auto mu_c = critical_dipole(sweep);

  RunManifest manifest;
  manifest.command = "sweep";
  manifest.config_hash = config.hash();
  manifest.solver = {{"path", path_name}, {"window", window_name_in},
                     {"threshold", threshold}, {"lossless", sweep.lossless},
                     {"mu_min", mu_min}, {"mu_max", mu_max}, {"mu_steps", mu_steps}};

  write_sweep_csv(out_path(out_dir, "sweep.csv"), sweep);
  write_json(out_path(out_dir, "sweep_points.json"), sweep_points_json(sweep));
  write_heatmap_csv(out_path(out_dir, "heatmap.csv"), sweep);
  manifest.outputs = {"sweep.csv", "sweep_points.json", "heatmap.csv", "mu_c.json"};

  nlohmann::json report;
  report["mu_c_debye"] = nullptr;
  if (mu_c) {
    report["mu_c_debye"] = *mu_c;
    double below = grid.front();
    for (double mu : grid)
      if (mu < *mu_c) below = mu;
    report["bracket_debye"] = {below, *mu_c};
    if (refine_tol > 0.0) {
      const auto refined = refine_critical_dipole(config, sweep, path, options,
                                                  lossless, refine_tol);
      if (refined) report["mu_c_refined_debye"] = *refined;
    }
    std::cout << "mu_c = " << *mu_c << " D (bracket " << below << " .. " << *mu_c << ")\n";
  } else {
    std::cout << "mu_c = none (no dominant-peak switch in range)\n";
  }
  write_json(out_path(out_dir, "mu_c.json"), report);
  write_manifest(out_path(out_dir, "manifest.json"), manifest);
  std::cout << "wrote " << out_dir << "/sweep.csv (" << grid.size() << " points)\n";
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  SystemConfig config;
  try {
    config = load_config_file(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kExitValidation;
  }
  std::cout << "valid: " << config.n_modes() << " modes, emitter "
            << units::thz_from_rad_fs(config.emitter.omega_e) << " THz, mu "
            << config.emitter.mu_debye << " D, "
            << (config.lossless ? "lossless" : "lossy") << "\n";
  const auto report = classify_regime(secular_from_config(config));
  std::cout << "regime at mu = " << config.emitter.mu_debye << " D: "
            << region_name(report.label) << "\n";
  for (const auto& p : report.pairs)
    std::cout << "  pair " << p.index << ": g = " << units::thz_from_rad_fs(p.g)
              << " THz, gap = " << units::thz_from_rad_fs(p.gap)
              << " THz, g/gap = " << p.ratio_single
              << ", g^2/(|d|gap) = " << p.ratio_collective << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-level emitter coupled to lossy bosonic modes: dynamics, "
               "spectra, and dipole-moment sweeps"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "propagate a config and write n(t)");
  std::string sim_config, sim_path = "schrodinger", sim_out = "out";
  double sim_tol = 1e-10;
  bool sim_verify = false;
  sim->add_option("config", sim_config, "config JSON")->required();
  sim->add_option("--path", sim_path, "schrodinger | lindblad | analytic")
      ->check(CLI::IsMember({"schrodinger", "lindblad", "analytic"}));
  sim->add_option("--out", sim_out, "output directory");
  sim->add_option("--tol", sim_tol, "integrator tolerance");
  sim->add_flag("--verify", sim_verify, "cross-check against the independent path");

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "FFT a trace or config and detect peaks");
  std::string spc_input, spc_window = "hann", spc_out = "out", spc_lmax;
  double spc_threshold = 0.01, spc_tol = 1e-10;
  int spc_cut = 2;
  bool spc_verify = false;
  spec->add_option("input", spc_input, "config JSON or population CSV")->required();
  spec->add_option("--window", spc_window, "none | hann");
  spec->add_option("--threshold", spc_threshold, "peak threshold (fraction of max)");
  spec->add_option("--dc-cut-bins", spc_cut, "low bins to zero");
  spec->add_option("--lmax", spc_lmax, "comma-separated truncation levels");
  spec->add_option("--out", spc_out, "output directory");
  spec->add_option("--tol", spc_tol, "integrator tolerance");
  spec->add_flag("--verify", spc_verify, "check peaks against the analytic catalog");

  // sweep
  auto* swp = app.add_subcommand("sweep", "dipole-moment sweep with mu_c detection");
  std::string swp_config, swp_path = "schrodinger", swp_window = "hann", swp_out = "out";
  double swp_min = 5.0, swp_max = 80.0, swp_threshold = 0.01, swp_refine = 0.0;
  int swp_steps = 76, swp_jobs = default_jobs();
  bool swp_lossless = false;
  swp->add_option("config", swp_config, "config JSON")->required();
  swp->add_option("--mu-min", swp_min, "grid start, Debye");
  swp->add_option("--mu-max", swp_max, "grid end, Debye");
  swp->add_option("--mu-steps", swp_steps, "grid size");
  swp->add_flag("--lossless", swp_lossless, "force kappa = 0");
  swp->add_option("--path", swp_path, "schrodinger | lindblad | analytic")
      ->check(CLI::IsMember({"schrodinger", "lindblad", "analytic"}));
  swp->add_option("--threshold", swp_threshold, "peak threshold");
  swp->add_option("--window", swp_window, "none | hann");
  swp->add_option("--jobs", swp_jobs, "concurrent sweep points (PLEXSIM_JOBS)");
  swp->add_option("--refine", swp_refine, "bisection tolerance for mu_c, Debye");
  swp->add_option("--out", swp_out, "output directory");

  // validate
  auto* val = app.add_subcommand("validate", "check a config and report its regime");
  std::string val_config;
  val->add_option("config", val_config, "config JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed())
      return cmd_simulate(sim_config, sim_path, sim_out, sim_tol, sim_verify);
    if (spec->parsed()) {
      std::vector<int> l_max_list;
      if (!spc_lmax.empty()) {
        std::stringstream ss(spc_lmax);
        std::string item;
        while (std::getline(ss, item, ',')) l_max_list.push_back(std::stoi(item));
      }
      return cmd_spectrum(spc_input, spc_window, spc_threshold, spc_cut, l_max_list,
                          spc_out, spc_tol, spc_verify);
    }
    if (swp->parsed())
      return cmd_sweep(swp_config, swp_min, swp_max, swp_steps, swp_lossless, swp_path,
                       swp_threshold, swp_window, swp_jobs, swp_refine, swp_out);
    if (val->parsed()) return cmd_validate(val_config);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

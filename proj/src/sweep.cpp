#include "plexsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "plexsim/dynamics.hpp"
#include "plexsim/model.hpp"
#include "plexsim/units.hpp"

namespace plexsim {

std::string region_name(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    default: return "mixed";
  }
}

std::string solver_path_name(SolverPath p) {
  switch (p) {
    case SolverPath::schrodinger: return "schrodinger";
    case SolverPath::lindblad: return "lindblad";
    default: return "analytic";
  }
}

SolverPath solver_path_from_name(const std::string& name) {
  if (name == "schrodinger") return SolverPath::schrodinger;
  if (name == "lindblad") return SolverPath::lindblad;
  if (name == "analytic") return SolverPath::analytic;
  throw ConfigError("unknown solver path \"" + name + "\"");
}

std::string branch_name(BranchId b) {
  switch (b) {
    case BranchId::omega1: return "omega1";
    case BranchId::omegan: return "omegan";
    case BranchId::other: return "other";
    default: return "ambiguous";
  }
}

RegimeReport classify_regime(const SecularProblem& problem, double threshold_ratio) {
  RegimeReport report;
  report.threshold_ratio = threshold_ratio;
  const int n = problem.n();
  if (n == 1) {
    report.label = Region::I;
    report.note = "single mode: region I semantics";
    return report;
  }

  // Pairing follows |Delta| ascending.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(problem.delta[a]) < std::abs(problem.delta[b]);
  });

  int votes1 = 0, votes2 = 0, votes3 = 0;
  for (int i = 0; i + 1 < n; ++i) {
    PairEvaluation pe;
    pe.index = i + 1;
    pe.g = problem.g[order[i]];
    pe.gap = std::abs(problem.delta[order[i]] - problem.delta[order[i + 1]]);
    pe.abs_delta_next = std::abs(problem.delta[order[i + 1]]);
    pe.ratio_single = pe.g / pe.gap;
    const double dd = pe.abs_delta_next * pe.gap;
    pe.ratio_collective = pe.g * pe.g / dd;
    pe.region1 = pe.g < pe.gap;
    pe.region2 = (pe.gap * pe.gap < pe.g * pe.g) &&
                 (pe.g * pe.g * threshold_ratio <= dd);
    pe.region3 = pe.g * pe.g >= threshold_ratio * dd;
    votes1 += pe.region1;
    votes2 += pe.region2;
    votes3 += pe.region3;
    report.pairs.push_back(pe);
  }

  const int pairs = n - 1;
  const auto holds = [pairs](int votes) { return 2 * votes >= pairs; };
  Region label = Region::mixed;
  int best = -1;
  // Ties resolve toward the lower region.
  if (holds(votes3) && votes3 > best) { label = Region::III; best = votes3; }
  if (holds(votes2) && votes2 >= best) { label = Region::II; best = votes2; }
  if (holds(votes1) && votes1 >= best) { label = Region::I; best = votes1; }
  report.label = label;
  return report;
}

std::vector<PopulationTrace> truncation_study(const SystemConfig& config,
                                              std::span<const int> l_max_list,
                                              double tol) {
  std::vector<PopulationTrace> traces;
  const auto grid = config.time.times();
  for (int l_max : l_max_list) {
    const SystemConfig truncated = truncate_modes(config, l_max);
    const auto h = build_hamiltonian(truncated, truncated.lossless);
    auto trace = emitter_population(propagate_schrodinger(h, grid, tol));
    trace.meta.l_max = l_max;
    trace.meta.config_hash = truncated.hash();
    traces.push_back(std::move(trace));
  }
  return traces;
}

double decay_envelope_cutoff(const SystemConfig& config) {
  if (config.lossless) return 0.0;
  double kappa_max = 0.0;
  for (const auto& m : config.modes) kappa_max = std::max(kappa_max, m.kappa);
  return kappa_max;
}

int effective_dc_cut_bins(const SpectrumOptions& options, const SystemConfig& config,
                          double bin_width) {
  const double cutoff =
      options.dc_cut_omega >= 0.0 ? options.dc_cut_omega : decay_envelope_cutoff(config);
  int bins = options.dc_cut_bins;
  if (cutoff > 0.0 && bin_width > 0.0)
    bins = std::max(bins, static_cast<int>(std::ceil(cutoff / bin_width)));
  return bins;
}

namespace {

BranchId assign_branch(double omega_dominant, const SpectralDecomposition& catalog,
                       double bin_width, bool lossless) {
  const int n = catalog.n();
  const double w1 = std::abs(catalog.omegas[0]);
  const double wn = std::abs(catalog.omegas[n - 1]);
  const double d1 = std::abs(omega_dominant - w1);
  const double dn = std::abs(omega_dominant - wn);

  if (lossless) {
    // Require the dominant peak to sit within one bin of some catalog line.
    const auto components = frequency_components(catalog);
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& c : components)
      nearest = std::min(nearest, std::abs(omega_dominant - c.frequency));
    if (nearest > bin_width) return BranchId::ambiguous;
    if (d1 <= bin_width && d1 <= dn) return BranchId::omega1;
    if (dn <= bin_width && dn < d1) return BranchId::omegan;
    return BranchId::other;
  }

  // With loss the peaks broaden and shift; assign to the nearer of the two
  // branch references unless the call is too close to make.
  if (std::abs(d1 - dn) < bin_width) return BranchId::ambiguous;
  return d1 < dn ? BranchId::omega1 : BranchId::omegan;
}

SweepPoint evaluate_point(const SystemConfig& base, double mu, SolverPath path,
                          const SpectrumOptions& options, bool lossless_override,
                          bool keep_spectrum) {
  SystemConfig config = scale_couplings(base, mu);
  if (lossless_override) config.lossless = true;
  const bool lossless = config.lossless;
  const auto grid = config.time.times();

  PopulationTrace trace;
  switch (path) {
    case SolverPath::analytic: {
      if (!lossless) throw ConfigError("analytic path requires lossless");
      const auto decomposition = SpectralDecomposition::solve(secular_from_config(config));
      trace = population_closed_form(decomposition, grid);
      break;
    }
    case SolverPath::lindblad: {
      trace = emitter_population(propagate_lindblad(build_lindblad(config), grid));
      break;
    }
    case SolverPath::schrodinger: {
      trace = emitter_population(
          propagate_schrodinger(build_hamiltonian(config, lossless), grid));
      break;
    }
  }

  auto raw = fft_population(trace, options.window);
  const int cut_bins = effective_dc_cut_bins(options, config, raw.bin_width());
  auto spectrum = remove_dc(std::move(raw), cut_bins);

  SweepPoint point;
  point.mu = mu;
  point.peaks = detect_peaks(spectrum, options.rel_threshold, options.min_separation_bins);
  point.dominant_omega = dominant_frequency(point.peaks);
  point.regime = classify_regime(secular_from_config(config)).label;

  const auto catalog = SpectralDecomposition::solve(secular_from_config(config));
  point.catalog_omega1 = std::abs(catalog.omegas[0]);
  point.catalog_omegan = std::abs(catalog.omegas[catalog.n() - 1]);
  point.branch = assign_branch(point.dominant_omega, catalog, spectrum.bin_width(), lossless);
  if (keep_spectrum) point.spectrum_normalized = spectrum.normalized();
  return point;
}

}  // namespace

SweepResult sweep_dipole(const SystemConfig& config, std::span<const double> mu_grid,
                         SolverPath path, const SpectrumOptions& options,
                         bool lossless_override, int jobs, bool keep_spectra) {
  for (size_t i = 1; i < mu_grid.size(); ++i)
    if (mu_grid[i] <= mu_grid[i - 1])
      throw ConfigError("sweep_dipole: mu grid must be strictly increasing");

  SweepResult result;
  result.mu_grid.assign(mu_grid.begin(), mu_grid.end());
  result.lossless = lossless_override || config.lossless;
  result.points.resize(mu_grid.size());

  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(mu_grid.size())));

  std::atomic<size_t> cursor{0};
  std::vector<std::string> failures(mu_grid.size());
  const auto worker = [&] {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= mu_grid.size()) return;
      try {
        result.points[i] = evaluate_point(config, mu_grid[i], path, options,
                                          lossless_override, keep_spectra);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (size_t i = 0; i < failures.size(); ++i)
    if (!failures[i].empty())
      throw SolverError("sweep point mu = " + std::to_string(mu_grid[i]) +
                        " D failed: " + failures[i]);

  // Shared spectrum axis for heatmap export.
  const int samples = config.time.samples;
  const double dt = config.time.dt();
  const size_t bins = static_cast<size_t>(samples) / 2 + 1;
  result.omega_grid.resize(bins);
  for (size_t k = 0; k < bins; ++k)
    result.omega_grid[k] = 2.0 * units::pi * static_cast<double>(k) /
                           (static_cast<double>(samples) * dt);
  return result;
}

std::optional<double> critical_dipole(const SweepResult& sweep) {
  const auto& pts = sweep.points;
  if (pts.size() < 3) throw ConfigError("critical_dipole: need at least 3 sweep points");

  // First index of the final run of Omega_n identities reaching the end.
  size_t start = pts.size();
  for (size_t i = pts.size(); i-- > 0;) {
    if (pts[i].branch == BranchId::omegan)
      start = i;
    else
      break;
  }
  if (start == pts.size() || start == 0) return std::nullopt;

  bool saw_omega1 = false;
  for (size_t i = 0; i < start; ++i) saw_omega1 |= pts[i].branch == BranchId::omega1;
  if (!saw_omega1) return std::nullopt;
  return pts[start].mu;
}

std::optional<double> refine_critical_dipole(const SystemConfig& config,
                                             const SweepResult& sweep, SolverPath path,
                                             const SpectrumOptions& options,
                                             bool lossless_override,
                                             double mu_tolerance_debye) {
  const auto coarse = critical_dipole(sweep);
  if (!coarse) return std::nullopt;

  double hi = *coarse;
  double lo = sweep.points.front().mu;
  for (const auto& p : sweep.points)
    if (p.mu < hi) lo = p.mu;  // last grid point below the switch

  while (hi - lo > mu_tolerance_debye) {
    const double mid = 0.5 * (lo + hi);
    const auto point = // reuse the per-point pipeline
        sweep_dipole(config, std::vector<double>{mid}, path, options, lossless_override, 1)
            .points.front();
    if (point.branch == BranchId::omegan)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace plexsim

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plexsim/analytic.hpp"
#include "plexsim/config.hpp"
#include "plexsim/spectrum.hpp"
#include "plexsim/trace.hpp"

namespace plexsim {

enum class Region { I, II, III, mixed };
std::string region_name(Region r);

// Inequality evaluation for one adjacent mode pair (i, i+1) in |Delta|
// ascending order.  ratio_single = g_i / |gap|; ratio_collective =
// g_i^2 / (|Delta_{i+1}| |gap|).  The much-less/much-greater conditions use
// the configurable threshold R (default 10).
struct PairEvaluation {
  int index = 0;  // 1-based position in the sorted order
  double g = 0.0;
  double gap = 0.0;             // |Delta_i - Delta_{i+1}|
  double abs_delta_next = 0.0;  // |Delta_{i+1}|
  double ratio_single = 0.0;
  double ratio_collective = 0.0;
  bool region1 = false, region2 = false, region3 = false;
};

struct RegimeReport {
  std::vector<PairEvaluation> pairs;
  Region label = Region::mixed;
  double threshold_ratio = 10.0;
  std::string note;
};

// Region I:   g_i < |gap_i| for the pair.
// Region II:  gap_i^2 < g_i^2 and g_i^2 * R <= |Delta_{i+1}| * gap_i.
// Region III: g_i^2 >= R * |Delta_{i+1}| * gap_i.
// Overall label: the region holding for at least half the pairs (most votes
// wins, lower region on ties); "mixed" when none reaches half.  n = 1 is
// region I by convention.
RegimeReport classify_regime(const SecularProblem& problem, double threshold_ratio = 10.0);

// One population trace per truncation level, same grid and solver path.
std::vector<PopulationTrace> truncation_study(const SystemConfig& config,
                                              std::span<const int> l_max_list,
                                              double tol = 1e-10);

enum class SolverPath { schrodinger, lindblad, analytic };
std::string solver_path_name(SolverPath p);
SolverPath solver_path_from_name(const std::string& name);

struct SpectrumOptions {
  Window window = Window::hann;
  double rel_threshold = 0.01;
  int dc_cut_bins = 2;
  double dc_cut_omega = -1.0;  // rad/fs; < 0 = auto (decay_envelope_cutoff)
  int min_separation_bins = 3;
};

// The Fourier transform of a damped population is dominated below ~kappa by
// the decay envelope rather than by oscillation peaks; lossy pipelines zero
// bins below this frequency (0 for lossless configs, max kappa otherwise).
double decay_envelope_cutoff(const SystemConfig& config);

// dc_cut_bins combined with the omega cutoff for a given bin width.
int effective_dc_cut_bins(const SpectrumOptions& options, const SystemConfig& config,
                          double bin_width);

enum class BranchId { omega1, omegan, other, ambiguous };
std::string branch_name(BranchId b);

struct SweepPoint {
  double mu = 0.0;              // Debye
  double dominant_omega = 0.0;  // rad/fs
  Region regime = Region::mixed;
  BranchId branch = BranchId::ambiguous;
  double catalog_omega1 = 0.0;  // lossless |Omega_1| at this mu
  double catalog_omegan = 0.0;  // lossless |Omega_n| at this mu
  PeakSet peaks;
  std::vector<double> spectrum_normalized;  // kept when requested (heatmaps)
};

struct SweepResult {
  std::vector<double> mu_grid;
  std::vector<SweepPoint> points;
  std::vector<double> omega_grid;  // spectrum axis shared by all points
  bool lossless = true;
};

// Simulate / FFT / peak-detect at every mu on the grid.  Points execute
// concurrently (jobs <= 0 picks hardware concurrency); results are
// deterministic and independent of the worker count.  Solver errors are
// rethrown annotated with the offending mu.
SweepResult sweep_dipole(const SystemConfig& config, std::span<const double> mu_grid,
                         SolverPath path, const SpectrumOptions& options,
                         bool lossless_override = false, int jobs = 0,
                         bool keep_spectra = false);

// Smallest grid mu at which the dominant-peak identity switches to the
// Omega_n branch and stays there, having been on the Omega_1 branch earlier;
// nullopt when no such switch happens in range.
std::optional<double> critical_dipole(const SweepResult& sweep);

// Bisection refinement of the switch between the bracketing grid points.
std::optional<double> refine_critical_dipole(const SystemConfig& config,
                                             const SweepResult& sweep, SolverPath path,
                                             const SpectrumOptions& options,
                                             bool lossless_override,
                                             double mu_tolerance_debye);

}  // namespace plexsim

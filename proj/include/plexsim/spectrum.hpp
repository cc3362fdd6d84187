#pragma once

#include <string>
#include <vector>

#include "plexsim/trace.hpp"

namespace plexsim {

enum class Window { none, hann };

std::string window_name(Window w);
Window window_from_name(const std::string& name);

// One-sided magnitude spectrum of a population trace.  Frequencies are in
// rad/fs on a uniform grid starting at 0; magnitudes are raw |X_k| (use
// normalized() for the max = 1 form used in serialized output).
struct Spectrum {
  std::vector<double> omegas;
  std::vector<double> magnitudes;
  Window window = Window::hann;
  bool dc_removed = false;
  bool mean_subtracted = true;
  int source_samples = 0;
  double dt_fs = 0.0;

  double bin_width() const { return omegas.size() > 1 ? omegas[1] - omegas[0] : 0.0; }
  std::vector<double> normalized() const;
};

// FFT of n(t) (minus its mean when subtract_mean), windowed as requested.
// Requires a uniform grid with at least 16 samples.
Spectrum fft_population(const PopulationTrace& trace, Window window,
                        bool subtract_mean = true);

// Zero the lowest `cut_bins` bins (default 2); idempotent.  Marks the
// spectrum ready for peak detection.
Spectrum remove_dc(Spectrum spectrum, int cut_bins = 2);

struct Peak {
  double omega = 0.0;      // refined by 3-point quadratic interpolation
  double magnitude = 0.0;  // refined
  double omega_bin = 0.0;  // bin-center values before refinement
  double magnitude_bin = 0.0;
};

struct PeakSet {
  std::vector<Peak> peaks;  // sorted by magnitude, descending
  double rel_threshold = 0.0;
  int min_separation_bins = 0;
  double bin_width = 0.0;
};

// Local maxima above rel_threshold * max, greedily suppressing maxima within
// min_separation_bins of a stronger accepted peak (this removes window
// sidelobes; it also sets the resolution limit for close lines).
PeakSet detect_peaks(const Spectrum& spectrum, double rel_threshold,
                     int min_separation_bins = 3);

// Frequency of the largest peak; ties break toward higher frequency.
double dominant_frequency(const PeakSet& peaks);

}  // namespace plexsim

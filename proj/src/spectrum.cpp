#include "plexsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "plexsim/errors.hpp"
#include "plexsim/fft.hpp"

namespace plexsim {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string window_name(Window w) { return w == Window::hann ? "hann" : "none"; }

Window window_from_name(const std::string& name) {
  if (name == "hann") return Window::hann;
  if (name == "none") return Window::none;
  throw ConfigError("unknown window \"" + name + "\" (use none or hann)");
}

std::vector<double> Spectrum::normalized() const {
  double peak = 0.0;
  for (double m : magnitudes) peak = std::max(peak, m);
  std::vector<double> out = magnitudes;
  if (peak > 0.0)
    for (double& m : out) m /= peak;
  return out;
}

Spectrum fft_population(const PopulationTrace& trace, Window window,
                        bool subtract_mean) {
  const size_t n = trace.values.size();
  if (n < 16) throw ConfigError("fft_population: need at least 16 samples");
  if (trace.times.size() != n) throw ConfigError("fft_population: time/value size mismatch");

  const double dt = trace.times[1] - trace.times[0];
  for (size_t i = 1; i < n; ++i) {
    const double step = trace.times[i] - trace.times[i - 1];
    if (std::abs(step - dt) > 1e-9 * std::max(std::abs(dt), 1.0))
      throw ConfigError("fft_population: non-uniform time grid");
  }

  double mean = 0.0;
  if (subtract_mean)
    mean = std::accumulate(trace.values.begin(), trace.values.end(), 0.0) /
           static_cast<double>(n);

  std::vector<std::complex<double>> samples(n);
  for (size_t i = 0; i < n; ++i) {
    double w = 1.0;
    if (window == Window::hann)
      w = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) /
                                static_cast<double>(n - 1)));
    samples[i] = w * (trace.values[i] - mean);
  }

  const auto transformed = fft(std::move(samples));
  const size_t bins = n / 2 + 1;

  Spectrum spectrum;
  spectrum.window = window;
  spectrum.mean_subtracted = subtract_mean;
  spectrum.dc_removed = false;
  spectrum.source_samples = static_cast<int>(n);
  spectrum.dt_fs = dt;
  spectrum.omegas.resize(bins);
  spectrum.magnitudes.resize(bins);
  const double domega = 2.0 * kPi / (static_cast<double>(n) * dt);
  for (size_t k = 0; k < bins; ++k) {
    spectrum.omegas[k] = domega * static_cast<double>(k);
    spectrum.magnitudes[k] = std::abs(transformed[k]);
  }
  return spectrum;
}

Spectrum remove_dc(Spectrum spectrum, int cut_bins) {
  for (int k = 0; k < cut_bins && k < static_cast<int>(spectrum.magnitudes.size()); ++k)
    spectrum.magnitudes[k] = 0.0;
  spectrum.dc_removed = true;
  return spectrum;
}

PeakSet detect_peaks(const Spectrum& spectrum, double rel_threshold,
                     int min_separation_bins) {
  if (spectrum.magnitudes.empty()) throw ConfigError("detect_peaks: empty spectrum");
  if (!spectrum.dc_removed)
    throw ConfigError("detect_peaks: remove_dc must run first");

  const auto& mag = spectrum.magnitudes;
  const size_t bins = mag.size();
  const double top = *std::max_element(mag.begin(), mag.end());
  const double threshold = rel_threshold * top;

  std::vector<size_t> candidates;
  for (size_t i = 1; i + 1 < bins; ++i)
    if (mag[i] > mag[i - 1] && mag[i] >= mag[i + 1] && mag[i] >= threshold)
      candidates.push_back(i);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](size_t a, size_t b) { return mag[a] > mag[b]; });

  std::vector<size_t> accepted;
  for (size_t i : candidates) {
    bool shadowed = false;
    for (size_t j : accepted)
      if (std::llabs(static_cast<long long>(i) - static_cast<long long>(j)) <=
          min_separation_bins) {
        shadowed = true;
        break;
      }
    if (!shadowed) accepted.push_back(i);
  }

  PeakSet set;
  set.rel_threshold = rel_threshold;
  set.min_separation_bins = min_separation_bins;
  set.bin_width = spectrum.bin_width();
  for (size_t i : accepted) {
    Peak p;
    p.omega_bin = spectrum.omegas[i];
    p.magnitude_bin = mag[i];
    // 3-point quadratic refinement around the bin maximum.
    const double ym = mag[i - 1], y0 = mag[i], yp = mag[i + 1];
    const double denom = ym - 2.0 * y0 + yp;
    if (denom < 0.0) {
      const double shift = 0.5 * (ym - yp) / denom;
      p.omega = p.omega_bin + shift * set.bin_width;
      p.magnitude = y0 - 0.25 * (ym - yp) * shift;
    } else {
      p.omega = p.omega_bin;
      p.magnitude = y0;
    }
    set.peaks.push_back(p);
  }
  std::stable_sort(set.peaks.begin(), set.peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.magnitude > b.magnitude; });
  return set;
}

double dominant_frequency(const PeakSet& peaks) {
  if (peaks.peaks.empty()) throw SolverError("dominant_frequency: no peaks");
  double best_mag = peaks.peaks.front().magnitude;
  double best_omega = peaks.peaks.front().omega;
  for (const auto& p : peaks.peaks) {
    if (p.magnitude == best_mag && p.omega > best_omega) best_omega = p.omega;
    if (p.magnitude > best_mag) {
      best_mag = p.magnitude;
      best_omega = p.omega;
    }
  }
  return best_omega;
}

}  // namespace plexsim

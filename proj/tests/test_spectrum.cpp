#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "plexsim/fft.hpp"
#include "plexsim/spectrum.hpp"

using namespace plexsim;

namespace {

constexpr double kPi = std::numbers::pi;

PopulationTrace cosine_trace(const std::vector<std::pair<double, double>>& tones,
                             double offset, double t_max, int samples) {
  PopulationTrace trace;
  trace.times.resize(samples);
  trace.values.resize(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = t_max * i / (samples - 1);
    trace.times[i] = t;
    double v = offset;
    for (const auto& [amp, omega] : tones) v += amp * std::cos(omega * t);
    trace.values[i] = v;
  }
  return trace;
}

}  // namespace

TEST_SUITE("fft") {
  TEST_CASE("matches the naive DFT for mixed lengths") {
    std::mt19937_64 rng(83);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (size_t n : {16u, 24u, 100u, 128u, 243u}) {
      std::vector<std::complex<double>> x(n);
      for (auto& v : x) v = {normal(rng), normal(rng)};
      const auto fast = fft(x);
      const auto slow = oracle::naive_dft(x);
      double scale = 0.0;
      for (const auto& v : slow) scale = std::max(scale, std::abs(v));
      for (size_t k = 0; k < n; ++k) CHECK(std::abs(fast[k] - slow[k]) <= 1e-10 * scale);
    }
  }
}

TEST_SUITE("fft_population") {
  TEST_CASE("constant trace is identically zero after mean subtraction") {
    const auto trace = cosine_trace({}, 0.7, 100.0, 256);
    const auto spectrum = remove_dc(fft_population(trace, Window::none));
    for (double m : spectrum.magnitudes) CHECK(m == 0.0);
  }

  TEST_CASE("Rabi line lands within one bin of 2g") {
    const double g = 0.25;
    const auto trace = cosine_trace({{0.5, 2.0 * g}}, 0.5, 200.0, 4096);
    const auto spectrum = remove_dc(fft_population(trace, Window::hann));
    size_t argmax = 0;
    for (size_t k = 1; k < spectrum.magnitudes.size(); ++k)
      if (spectrum.magnitudes[k] > spectrum.magnitudes[argmax]) argmax = k;
    CHECK(std::abs(spectrum.omegas[argmax] - 2.0 * g) <= spectrum.bin_width());
  }

  TEST_CASE("non-uniform grids and short traces rejected") {
    PopulationTrace bad = cosine_trace({}, 1.0, 10.0, 32);
    bad.times[5] += 0.1;
    CHECK_THROWS_AS(fft_population(bad, Window::none), ConfigError);
    const auto tiny = cosine_trace({}, 1.0, 10.0, 8);
    CHECK_THROWS_AS(fft_population(tiny, Window::none), ConfigError);
  }

  TEST_CASE("Parseval: windowed signal energy equals spectrum energy") {
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Window window : {Window::none, Window::hann}) {
      PopulationTrace trace = cosine_trace({{0.3, 0.8}, {0.2, 1.7}}, 0.5, 150.0, 1024);
      for (double& v : trace.values) v += 0.01 * u(rng);
      const int n = static_cast<int>(trace.values.size());

      const auto spectrum = fft_population(trace, window);
      double spectral = 0.0;
      for (size_t k = 0; k < spectrum.magnitudes.size(); ++k) {
        const double m2 = spectrum.magnitudes[k] * spectrum.magnitudes[k];
        const bool interior = k != 0 && k + 1 != spectrum.magnitudes.size();
        spectral += interior ? 2.0 * m2 : m2;  // one-sided bookkeeping, n even
      }
      spectral /= n;

      double mean = 0.0;
      for (double v : trace.values) mean += v;
      mean /= n;
      double direct = 0.0;
      for (int i = 0; i < n; ++i) {
        double w = 1.0;
        if (window == Window::hann) w = 0.5 * (1.0 - std::cos(2.0 * kPi * i / (n - 1)));
        const double s = w * (trace.values[i] - mean);
        direct += s * s;
      }
      CHECK(std::abs(spectral - direct) <= 1e-8 * direct);
    }
  }

  TEST_CASE("exponential decay matches the geometric-series transform") {
    // For x_t = exp(-kappa dt t) sampled at N points, mean subtraction only
    // touches bin 0, and |X_k| = |1 - rho^N| / |1 - rho e^{-2 pi i k / N}|
    // with rho = exp(-kappa dt): an exact finite-sum oracle.
    const double kappa = 0.05;
    const int n = 512;
    const double t_max = 200.0;
    PopulationTrace trace;
    trace.times.resize(n);
    trace.values.resize(n);
    const double dt = t_max / (n - 1);
    for (int i = 0; i < n; ++i) {
      trace.times[i] = dt * i;
      trace.values[i] = std::exp(-kappa * trace.times[i]);
    }
    const auto spectrum = remove_dc(fft_population(trace, Window::none));
    const double rho = std::exp(-kappa * dt);
    const double num = 1.0 - std::pow(rho, n);
    CHECK(spectrum.magnitudes[0] == 0.0);
    CHECK(spectrum.magnitudes[1] == 0.0);
    for (size_t k = 2; k < spectrum.magnitudes.size(); ++k) {
      const std::complex<double> den =
          1.0 - rho * std::exp(std::complex<double>(0.0, -2.0 * kPi * k / n));
      const double expected = num / std::abs(den);
      CHECK(spectrum.magnitudes[k] == doctest::Approx(expected).epsilon(1e-10));
    }
    // The retained shoulder is Lorentzian-like: monotone decreasing in k.
    for (size_t k = 3; k < spectrum.magnitudes.size(); ++k)
      CHECK(spectrum.magnitudes[k] <= spectrum.magnitudes[k - 1] * (1.0 + 1e-12));
  }
}

TEST_SUITE("remove_dc") {
  TEST_CASE("idempotent") {
    const auto trace = cosine_trace({{0.4, 1.1}}, 0.5, 120.0, 512);
    const auto once = remove_dc(fft_population(trace, Window::hann));
    const auto twice = remove_dc(once);
    CHECK(once.dc_removed);
    for (size_t k = 0; k < once.magnitudes.size(); ++k)
      CHECK(once.magnitudes[k] == twice.magnitudes[k]);
  }
}

TEST_SUITE("detect_peaks") {
  TEST_CASE("requires dc removal") {
    const auto trace = cosine_trace({{0.4, 1.1}}, 0.5, 120.0, 512);
    const auto spectrum = fft_population(trace, Window::hann);
    CHECK_THROWS_AS(detect_peaks(spectrum, 0.01), ConfigError);
  }

  TEST_CASE("single cosine gives exactly one peak") {
    const auto trace = cosine_trace({{0.5, 1.3}}, 0.5, 200.0, 4096);
    const auto spectrum = remove_dc(fft_population(trace, Window::hann));
    const auto peaks = detect_peaks(spectrum, 0.01);
    CHECK(peaks.peaks.size() == 1);
    CHECK(std::abs(peaks.peaks[0].omega - 1.3) <= spectrum.bin_width());
  }

  TEST_CASE("two tones inside one bin merge into a single peak") {
    const double t_max = 100.0;
    const double bin = 2.0 * kPi / t_max;
    const auto trace =
        cosine_trace({{0.3, 1.0}, {0.3, 1.0 + 0.4 * bin}}, 0.6, t_max, 2048);
    const auto spectrum = remove_dc(fft_population(trace, Window::hann));
    const auto peaks = detect_peaks(spectrum, 0.05);
    CHECK(peaks.peaks.size() == 1);
  }

  TEST_CASE("well separated tones all detected with amplitude ordering") {
    const auto trace =
        cosine_trace({{0.5, 0.8}, {0.3, 1.9}, {0.1, 3.1}}, 1.0, 300.0, 8192);
    const auto spectrum = remove_dc(fft_population(trace, Window::hann));
    const auto peaks = detect_peaks(spectrum, 0.01);
    REQUIRE(peaks.peaks.size() == 3);
    CHECK(std::abs(peaks.peaks[0].omega - 0.8) <= spectrum.bin_width());
    CHECK(std::abs(peaks.peaks[1].omega - 1.9) <= spectrum.bin_width());
    CHECK(std::abs(peaks.peaks[2].omega - 3.1) <= spectrum.bin_width());
  }

  TEST_CASE("quadratic refinement localizes a pure tone to 0.1 bin") {
    const int samples = 4096;  // 2^12
    const double t_max = 200.0;
    const double bin = 2.0 * kPi * (samples - 1) / (samples * t_max);
    for (double frac : {0.05, 0.15, 0.25, 0.35, 0.45}) {
      const double omega0 = (40.0 + frac) * bin;
      const auto trace = cosine_trace({{0.5, omega0}}, 0.5, t_max, samples);
      const auto spectrum = remove_dc(fft_population(trace, Window::hann));
      const auto peaks = detect_peaks(spectrum, 0.05);
      REQUIRE(!peaks.peaks.empty());
      CHECK(std::abs(peaks.peaks[0].omega - omega0) <= 0.1 * bin);
    }
  }
}

TEST_SUITE("dominant_frequency") {
  TEST_CASE("Rabi trace reports 2g") {
    const double g = 0.21;
    const auto trace = cosine_trace({{0.5, 2.0 * g}}, 0.5, 200.0, 4096);
    const auto spectrum = remove_dc(fft_population(trace, Window::hann));
    const auto peaks = detect_peaks(spectrum, 0.01);
    CHECK(std::abs(dominant_frequency(peaks) - 2.0 * g) <= spectrum.bin_width());
  }

  TEST_CASE("exact ties break toward the higher frequency") {
    PeakSet set;
    set.peaks.push_back({1.0, 0.5, 1.0, 0.5});
    set.peaks.push_back({2.0, 0.5, 2.0, 0.5});
    CHECK(dominant_frequency(set) == 2.0);
    CHECK_THROWS_AS(dominant_frequency(PeakSet{}), SolverError);
  }
}

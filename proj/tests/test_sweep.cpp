#include <doctest.h>

#include <cmath>

#include "plexsim/analytic.hpp"
#include "plexsim/dynamics.hpp"
#include "plexsim/io.hpp"
#include "plexsim/sweep.hpp"
#include "plexsim/units.hpp"

using namespace plexsim;

#ifndef PLEXSIM_DATA_DIR
#define PLEXSIM_DATA_DIR "."
#endif

namespace {

SystemConfig ladder() {
  static const SystemConfig config =
      load_config_file(std::string(PLEXSIM_DATA_DIR) + "/synthetic_npom_9mode.json");
  return config;
}

}  // namespace

TEST_SUITE("classify_regime") {
  TEST_CASE("vanishing couplings sit in region I") {
    const SecularProblem problem({1e-9, 1e-9, 1e-9}, {0.0, -0.4, -0.7});
    CHECK(classify_regime(problem).label == Region::I);
  }

  TEST_CASE("single mode is region I by convention") {
    const auto report = classify_regime(SecularProblem({5.0}, {0.0}));
    CHECK(report.label == Region::I);
    CHECK(!report.note.empty());
  }

  TEST_CASE("synthetic ladder: region III at 72 D, region I at dye-scale 10 D") {
    CHECK(classify_regime(secular_from_config(ladder())).label == Region::III);
    CHECK(classify_regime(secular_from_config(scale_couplings(ladder(), 10.0))).label ==
          Region::I);
    CHECK(classify_regime(secular_from_config(scale_couplings(ladder(), 5.0))).label ==
          Region::I);
  }

  TEST_CASE("labels are reproducible from the stored ratios and thresholds") {
    const auto report = classify_regime(secular_from_config(ladder()));
    int votes1 = 0, votes2 = 0, votes3 = 0;
    for (const auto& p : report.pairs) {
      CHECK(p.region1 == (p.ratio_single < 1.0));
      CHECK(p.region3 == (p.ratio_collective >= report.threshold_ratio));
      votes1 += p.region1;
      votes2 += p.region2;
      votes3 += p.region3;
    }
    const int pairs = static_cast<int>(report.pairs.size());
    CHECK(2 * votes3 >= pairs);  // III majority backs the III label
    CHECK(report.label == Region::III);
  }

  TEST_CASE("regime progression along increasing mu never steps backward") {
    const auto order = [](Region r) {
      switch (r) {
        case Region::I: return 0;
        case Region::II:
        case Region::mixed: return 1;
        default: return 2;
      }
    };
    int highest = 0;
    bool saw_i = false, saw_iii = false;
    for (double mu = 5.0; mu <= 80.0; mu += 2.5) {
      const auto label =
          classify_regime(secular_from_config(scale_couplings(ladder(), mu))).label;
      const int rank = order(label);
      CHECK(rank >= highest);
      highest = std::max(highest, rank);
      saw_i |= label == Region::I;
      saw_iii |= label == Region::III;
    }
    CHECK(saw_i);
    CHECK(saw_iii);
  }
}

TEST_SUITE("ladder_examples") {
  TEST_CASE("rescaling reproduces the coupling ladder at every grid point") {
    const auto base = ladder();
    for (double mu = 5.0; mu <= 80.0; mu += 7.5) {
      const auto g = couplings(scale_couplings(base, mu));
      for (int j = 0; j < base.n_modes(); ++j)
        CHECK(g[j] == doctest::Approx(base.modes[j].g_per_debye * mu).epsilon(1e-15));
    }
  }

  TEST_CASE("limit-form amplitudes favor Omega_1 when weak and Omega_n when strong") {
    const auto argmax_branch = [](const std::vector<double>& amps, int n) {
      int arg = 0;
      for (int i = 1; i < n; ++i)
        if (std::abs(amps[i]) > std::abs(amps[arg])) arg = i;
      return arg + 1;  // 1-based component index
    };
    const int n = ladder().n_modes();

    const auto weak_problem = secular_from_config(scale_couplings(ladder(), 8.0));
    const auto weak_roots = find_roots(weak_problem);
    CHECK(argmax_branch(asymptotic_amplitudes(weak_problem, weak_roots,
                                              AsymptoticRegime::weak),
                        n) == 1);

    const auto strong_problem = secular_from_config(ladder());  // 72 D
    const auto strong_roots = find_roots(strong_problem);
    CHECK(argmax_branch(asymptotic_amplitudes(strong_problem, strong_roots,
                                              AsymptoticRegime::strong),
                        n) == n);
  }
}

TEST_SUITE("truncation_study") {
  TEST_CASE("out-of-range truncation rejected") {
    auto config = ladder();
    config.time = {50.0, 256};
    CHECK_THROWS_AS(truncation_study(config, std::vector<int>{10}), ConfigError);
    CHECK_THROWS_AS(truncation_study(config, std::vector<int>{0}), ConfigError);
  }

  TEST_CASE("single-mode truncation is a damped Rabi trace") {
    auto config = ladder();
    config.time = {60.0, 2048};
    const auto traces = truncation_study(config, std::vector<int>{1}, 1e-10);
    REQUIRE(traces.size() == 1);
    // Resonant lossy mode: population returns toward 1 with a decaying
    // envelope; the first revival is below 1 and above the first dip.
    const auto& v = traces[0].values;
    CHECK(v[0] == 1.0);
    size_t dip = 0, revival = 0;
    for (size_t i = 1; i + 1 < v.size(); ++i) {
      if (!dip && v[i] < v[i - 1] && v[i] <= v[i + 1]) dip = i;
      if (dip && !revival && v[i] > v[i - 1] && v[i] >= v[i + 1]) revival = i;
    }
    REQUIRE(dip > 0);
    REQUIRE(revival > dip);
    CHECK(v[dip] < 0.2);
    CHECK(v[revival] > 0.5);
    CHECK(v[revival] < 1.0);
  }

  TEST_CASE("dominant frequency grows with the mode count and traces stay physical") {
    auto config = scale_couplings(ladder(), 30.0);
    config.lossless = true;
    config.time = {100.0, 8192};
    std::vector<int> levels{1, 2, 3, 4, 5, 6, 7, 8, 9};
    const auto traces = truncation_study(config, levels, 1e-10);
    double previous = 0.0;
    for (const auto& trace : traces) {
      CHECK(trace.values[0] == 1.0);
      for (double v : trace.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-9);
      }
      const auto spectrum = remove_dc(fft_population(trace, Window::hann));
      const double dominant = dominant_frequency(detect_peaks(spectrum, 0.01));
      CHECK(dominant >= previous - spectrum.bin_width());
      previous = dominant;
    }
  }

  TEST_CASE("full truncation equals the direct simulation") {
    auto config = ladder();
    config.time = {40.0, 512};
    const auto traces = truncation_study(config, std::vector<int>{9}, 1e-10);
    const auto direct = emitter_population(
        propagate_schrodinger(build_hamiltonian(config, config.lossless),
                              config.time.times(), 1e-10));
    REQUIRE(traces[0].values.size() == direct.values.size());
    for (size_t i = 0; i < direct.values.size(); ++i)
      CHECK(traces[0].values[i] == direct.values[i]);
  }
}

TEST_SUITE("catalog_matching") {
  TEST_CASE("every lossless peak above 5% sits within one bin of the catalog") {
    auto config = ladder();
    config.lossless = true;
    config.time = {200.0, 16384};
    for (double mu : {15.0, 30.0, 60.0}) {
      const auto scaled = scale_couplings(config, mu);
      const auto trace = emitter_population(propagate_schrodinger(
          build_hamiltonian(scaled, true), scaled.time.times(), 1e-10));
      const auto spectrum = remove_dc(fft_population(trace, Window::hann));
      const auto peaks = detect_peaks(spectrum, 0.05);
      const auto catalog = frequency_components(
          SpectralDecomposition::solve(secular_from_config(scaled)));
      REQUIRE(!peaks.peaks.empty());
      for (const auto& p : peaks.peaks) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& c : catalog)
          nearest = std::min(nearest, std::abs(p.omega - c.frequency));
        CHECK(nearest <= spectrum.bin_width());
      }
    }
  }

  TEST_CASE("the built Hamiltonian is invariant under a global frequency shift") {
    const auto base = ladder();
    auto shifted = base;
    shifted.emitter.omega_e += units::rad_fs_from_thz(700.0);
    for (auto& m : shifted.modes) m.omega += units::rad_fs_from_thz(700.0);
    const auto ha = build_hamiltonian(base, false).dense();
    const auto hb = build_hamiltonian(shifted, false).dense();
    CHECK((ha - hb).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_SUITE("sweep_dipole") {
  TEST_CASE("single-point sweep equals a direct simulation bit for bit") {
    auto config = ladder();
    config.time = {100.0, 4096};
    SpectrumOptions options;
    const auto sweep = sweep_dipole(config, std::vector<double>{40.0},
                                    SolverPath::schrodinger, options, false, 1);
    REQUIRE(sweep.points.size() == 1);

    const auto direct_config = scale_couplings(config, 40.0);
    const auto trace = emitter_population(propagate_schrodinger(
        build_hamiltonian(direct_config, false), direct_config.time.times(), 1e-10));
    auto raw = fft_population(trace, options.window);
    const int cut = effective_dc_cut_bins(options, direct_config, raw.bin_width());
    const auto spectrum = remove_dc(std::move(raw), cut);
    const auto peaks = detect_peaks(spectrum, options.rel_threshold,
                                    options.min_separation_bins);
    CHECK(sweep.points[0].dominant_omega == dominant_frequency(peaks));
    CHECK(sweep.points[0].peaks.peaks.size() == peaks.peaks.size());
  }

  TEST_CASE("worker count does not change results") {
    auto config = ladder();
    config.lossless = true;
    config.time = {100.0, 4096};
    std::vector<double> grid{10.0, 20.0, 30.0, 40.0, 50.0};
    SpectrumOptions options;
    const auto serial =
        sweep_dipole(config, grid, SolverPath::analytic, options, true, 1);
    const auto parallel =
        sweep_dipole(config, grid, SolverPath::analytic, options, true, 4);
    for (size_t i = 0; i < grid.size(); ++i) {
      CHECK(serial.points[i].dominant_omega == parallel.points[i].dominant_omega);
      CHECK(serial.points[i].branch == parallel.points[i].branch);
    }
  }

  TEST_CASE("single-mode config: dominant frequency is the linear Rabi 2 g(mu)") {
    auto config = load_config(R"({
      "emitter": { "omega_thz": 283, "mu_debye": 10 },
      "modes": [ { "omega_thz": 283, "kappa_thz": 0, "g_per_debye_thz": 1.8 } ],
      "lossless": true, "time": { "t_max_fs": 150, "samples": 8192 }})");
    std::vector<double> grid{10.0, 20.0, 40.0};
    const auto sweep =
        sweep_dipole(config, grid, SolverPath::schrodinger, SpectrumOptions{}, true, 2);
    for (size_t i = 0; i < grid.size(); ++i) {
      const double expected = 2.0 * grid[i] * config.modes[0].g_per_debye;
      CHECK(std::abs(sweep.points[i].dominant_omega - expected) <=
            sweep.points[i].peaks.bin_width);
    }
  }

  TEST_CASE("non-increasing grid rejected") {
    CHECK_THROWS_AS(sweep_dipole(ladder(), std::vector<double>{10.0, 10.0},
                                 SolverPath::analytic, SpectrumOptions{}, true, 1),
                    ConfigError);
  }

  TEST_CASE("analytic path on a lossy config rejected") {
    CHECK_THROWS_WITH_AS(sweep_dipole(ladder(), std::vector<double>{10.0, 20.0, 30.0},
                                      SolverPath::analytic, SpectrumOptions{}, false, 1),
                         doctest::Contains("requires lossless"), SolverError);
  }
}

TEST_SUITE("critical_dipole") {
  TEST_CASE("sweep excluding the switch region reports none") {
    auto config = ladder();
    config.time = {100.0, 4096};
    std::vector<double> grid{5.0, 6.0, 7.0, 8.0};
    const auto sweep =
        sweep_dipole(config, grid, SolverPath::analytic, SpectrumOptions{}, true, 2);
    CHECK(!critical_dipole(sweep).has_value());
  }

  TEST_CASE("fewer than three points rejected") {
    auto config = ladder();
    config.time = {100.0, 4096};
    const auto sweep = sweep_dipole(config, std::vector<double>{10.0, 40.0},
                                    SolverPath::analytic, SpectrumOptions{}, true, 2);
    CHECK_THROWS_AS(critical_dipole(sweep), ConfigError);
  }

  TEST_CASE("lossless ladder switches at an interior mu and matches the exact-amplitude switch") {
    auto config = ladder();
    config.time = {200.0, 8192};
    std::vector<double> grid;
    for (double mu = 14.0; mu <= 40.0; mu += 2.0) grid.push_back(mu);
    const auto sweep =
        sweep_dipole(config, grid, SolverPath::analytic, SpectrumOptions{}, true, 2);
    const auto mu_c = critical_dipole(sweep);
    REQUIRE(mu_c.has_value());
    CHECK(*mu_c > grid.front());
    CHECK(*mu_c < grid.back());

    // The exact-amplitude argmax (largest alpha_j among j = 1..n) moves to
    // the Omega_n branch within one grid step of the detected mu_c.
    double argmax_switch = 0.0;
    for (double mu : grid) {
      const auto d =
          SpectralDecomposition::solve(secular_from_config(scale_couplings(config, mu)));
      int arg = 0;
      for (int i = 1; i < d.n(); ++i)
        if (d.alphas[i] > d.alphas[arg]) arg = i;
      if (arg == d.n() - 1) {
        argmax_switch = mu;
        break;
      }
    }
    CHECK(std::abs(*mu_c - argmax_switch) <= 2.0 + 1e-12);  // one grid step
  }

  TEST_CASE("bisection refinement narrows the bracket") {
    auto config = ladder();
    config.time = {150.0, 4096};
    std::vector<double> grid{16.0, 20.0, 24.0, 28.0};
    const auto sweep =
        sweep_dipole(config, grid, SolverPath::analytic, SpectrumOptions{}, true, 2);
    const auto coarse = critical_dipole(sweep);
    REQUIRE(coarse.has_value());
    const auto fine = refine_critical_dipole(config, sweep, SolverPath::analytic,
                                             SpectrumOptions{}, true, 0.25);
    REQUIRE(fine.has_value());
    CHECK(*fine <= *coarse);
    CHECK(*fine >= *coarse - 4.0);
  }
}

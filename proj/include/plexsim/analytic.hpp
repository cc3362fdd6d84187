#pragma once

#include <span>
#include <vector>

#include "plexsim/config.hpp"
#include "plexsim/secular.hpp"
#include "plexsim/trace.hpp"

namespace plexsim {

// Closed-form lossless solution: roots lambda_j, residues alpha_j, and the
// observable frequencies Omega_j = lambda_j - lambda_{n+1} (j = 1..n).
struct SpectralDecomposition {
  std::vector<double> lambdas;  // n+1, ordering lambda_n < ... < lambda_1 < lambda_{n+1}
  std::vector<double> alphas;   // n+1, aligned with lambdas
  std::vector<double> omegas;   // n, Omega_j (negative by the ordering)

  int n() const { return static_cast<int>(omegas.size()); }
  static SpectralDecomposition solve(const SecularProblem& problem);
};

// Lossless secular problem from a config (g = g_per_debye * mu).
SecularProblem secular_from_config(const SystemConfig& config);

// |c_0(t)|^2 = sum_j alpha_j^2
//            + 2 alpha_{n+1} sum_{j<=n} alpha_j cos(Omega_j t)
//            + sum_{j<=n} sum_{k != j} alpha_j alpha_k cos((Omega_j - Omega_k) t)
PopulationTrace population_closed_form(const SpectralDecomposition& d,
                                       std::span<const double> t_grid);

struct FrequencyComponent {
  enum class Kind { mode, interference };
  double frequency = 0.0;  // rad/fs, >= 0
  double amplitude = 0.0;  // cosine coefficient in the population
  Kind kind = Kind::mode;
  int j = 0;  // mode component: Omega_j; interference: |Omega_j - Omega_k|
  int k = 0;  // 0 for mode components
};

// The n mode components (|Omega_j|, 2 alpha_{n+1} alpha_j) and the n(n-1)/2
// interference components (|Omega_j - Omega_k|, 2 alpha_j alpha_k), sorted by
// frequency.  Exact frequency collisions are kept as separate entries, so the
// catalog always has n(n+1)/2 entries.
std::vector<FrequencyComponent> frequency_components(const SpectralDecomposition& d);

enum class AsymptoticRegime { weak, strong };

// Limit-form amplitude estimates per root (diagnostic only):
//   weak:   [1 + lambda_i sum_j 1/(lambda_i - Delta_j)]^-1
//   strong: [1 - sum_{j != k} g_k^2 / ((lambda_i - Delta_j)(lambda_i - Delta_k))]^-1
std::vector<double> asymptotic_amplitudes(const SecularProblem& problem,
                                          std::span<const double> lambdas,
                                          AsymptoticRegime regime);

}  // namespace plexsim

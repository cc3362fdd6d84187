#include "plexsim/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace plexsim {

SpectralDecomposition SpectralDecomposition::solve(const SecularProblem& problem) {
  SpectralDecomposition d;
  d.lambdas = find_roots(problem);
  d.alphas = residues(problem, d.lambdas);
  const int n = problem.n();
  d.omegas.resize(n);
  for (int j = 0; j < n; ++j) d.omegas[j] = d.lambdas[j] - d.lambdas[n];
  return d;
}

SecularProblem secular_from_config(const SystemConfig& config) {
  return SecularProblem(couplings(config), detunings(config));
}

PopulationTrace population_closed_form(const SpectralDecomposition& d,
                                       std::span<const double> t_grid) {
  const int n = d.n();
  double constant = 0.0;
  for (double a : d.alphas) constant += a * a;
  const double alpha_last = d.alphas[n];

  PopulationTrace trace;
  trace.meta.solver_path = "analytic";
  trace.times.assign(t_grid.begin(), t_grid.end());
  trace.values.resize(t_grid.size());
  for (size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    double value = constant;
    for (int j = 0; j < n; ++j)
      value += 2.0 * alpha_last * d.alphas[j] * std::cos(d.omegas[j] * t);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (k != j)
          value += d.alphas[j] * d.alphas[k] * std::cos((d.omegas[j] - d.omegas[k]) * t);
    trace.values[i] = value;
  }
  return trace;
}

std::vector<FrequencyComponent> frequency_components(const SpectralDecomposition& d) {
  const int n = d.n();
  std::vector<FrequencyComponent> catalog;
  catalog.reserve(n * (n + 1) / 2);
  for (int j = 0; j < n; ++j) {
    catalog.push_back({std::abs(d.omegas[j]), 2.0 * d.alphas[n] * d.alphas[j],
                       FrequencyComponent::Kind::mode, j + 1, 0});
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      catalog.push_back({std::abs(d.omegas[j] - d.omegas[k]),
                         2.0 * d.alphas[j] * d.alphas[k],
                         FrequencyComponent::Kind::interference, j + 1, k + 1});
  std::stable_sort(catalog.begin(), catalog.end(),
                   [](const FrequencyComponent& a, const FrequencyComponent& b) {
                     return a.frequency < b.frequency;
                   });
  return catalog;
}

std::vector<double> asymptotic_amplitudes(const SecularProblem& problem,
                                          std::span<const double> lambdas,
                                          AsymptoticRegime regime) {
  const int n = problem.n();
  std::vector<double> out(lambdas.size());
  for (size_t i = 0; i < lambdas.size(); ++i) {
    const double lambda = lambdas[i];
    for (double delta : problem.delta)
      if (lambda == delta)
        throw SolverError("asymptotic_amplitudes: lambda equals a detuning");
    double denom;
    if (regime == AsymptoticRegime::weak) {
      double s = 0.0;
      for (double delta : problem.delta) s += 1.0 / (lambda - delta);
      denom = 1.0 + lambda * s;
    } else {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (k != j)
            s += problem.g[k] * problem.g[k] /
                 ((lambda - problem.delta[j]) * (lambda - problem.delta[k]));
      denom = 1.0 - s;
    }
    out[i] = 1.0 / denom;
  }
  return out;
}

}  // namespace plexsim

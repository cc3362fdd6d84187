#include "plexsim/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace plexsim {

SecularProblem::SecularProblem(std::vector<double> g_in, std::vector<double> delta_in)
    : g(std::move(g_in)), delta(std::move(delta_in)) {
  if (g.empty()) throw ConfigError("secular problem: empty coupling list");
  if (g.size() != delta.size())
    throw ConfigError("secular problem: coupling/detuning length mismatch");
  double scale = 0.0;
  for (double d : delta) scale = std::max(scale, std::abs(d));
  for (size_t j = 0; j < g.size(); ++j) {
    if (!(g[j] > 0.0) || !std::isfinite(g[j]))
      throw ConfigError("secular problem: coupling " + std::to_string(j) +
                        " must be > 0 (drop decoupled modes)");
    if (!std::isfinite(delta[j]))
      throw ConfigError("secular problem: non-finite detuning");
  }
  for (size_t i = 0; i < delta.size(); ++i)
    for (size_t j = i + 1; j < delta.size(); ++j)
      if (delta[i] == delta[j] ||
          std::abs(delta[i] - delta[j]) <= 1e-14 * scale)
        throw ConfigError("secular problem: degenerate detunings at indices " +
                          std::to_string(i) + ", " + std::to_string(j));
}

double secular_function(const SecularProblem& problem, double lambda) {
  const int n = problem.n();
  double value = lambda;
  for (int j = 0; j < n; ++j) value *= lambda - problem.delta[j];
  for (int j = 0; j < n; ++j) {
    double term = problem.g[j] * problem.g[j];
    for (int k = 0; k < n; ++k)
      if (k != j) term *= lambda - problem.delta[k];
    value -= term;
  }
  return value;
}

namespace {

// Sum of leave-one-out products prod_{k != m} (lambda - d_k) over m, for the
// factor list d; this is the derivative of prod_k (lambda - d_k).
double product_derivative(double lambda, std::span<const double> d) {
  const size_t n = d.size();
  if (n == 0) return 0.0;
  std::vector<double> suffix(n + 1, 1.0);
  for (size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * (lambda - d[i]);
  double prefix = 1.0, sum = 0.0;
  for (size_t m = 0; m < n; ++m) {
    sum += prefix * suffix[m + 1];
    prefix *= lambda - d[m];
  }
  return sum;
}

}  // namespace

double secular_derivative(const SecularProblem& problem, double lambda) {
  const int n = problem.n();
  // d/dlambda [ lambda * Q(lambda) ] = Q + lambda * Q'
  double q = 1.0;
  for (int k = 0; k < n; ++k) q *= lambda - problem.delta[k];
  double value = q + lambda * product_derivative(lambda, problem.delta);
  // d/dlambda [ -sum_j g_j^2 * Q_j(lambda) ]
  std::vector<double> rest;
  rest.reserve(n - 1);
  for (int j = 0; j < n; ++j) {
    rest.clear();
    for (int k = 0; k < n; ++k)
      if (k != j) rest.push_back(problem.delta[k]);
    value -= problem.g[j] * problem.g[j] * product_derivative(lambda, rest);
  }
  return value;
}

namespace {

// One root of p inside [lo, hi] where p(lo) and p(hi) have opposite signs
// (or vanish).  Bisection to a narrow interval, then safeguarded Newton.
double refine_root(const SecularProblem& problem, double lo, double hi,
                   double flo, double fhi) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-30});
  for (int it = 0; it < 200 && hi - lo > 1e-15 * scale; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at rounding resolution
    const double fmid = secular_function(problem, mid);
    if (fmid == 0.0) return mid;
    if ((flo < 0.0) == (fmid < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double f = secular_function(problem, x);
    const double fp = secular_derivative(problem, x);
    if (fp == 0.0) break;
    const double step = f / fp;
    const double next = x - step;
    if (!(next > lo && next < hi)) break;  // keep the bracket guarantee
    x = next;
    if (std::abs(step) <= 1e-16 * std::max(std::abs(x), 1e-30)) break;
  }
  return x;
}

}  // namespace

std::vector<double> find_roots(const SecularProblem& problem) {
  const int n = problem.n();
  std::vector<double> poles = problem.delta;
  std::sort(poles.begin(), poles.end());

  double sum_g2 = 0.0, sum_abs_delta = 0.0;
  for (int j = 0; j < n; ++j) {
    sum_g2 += problem.g[j] * problem.g[j];
    sum_abs_delta += std::abs(problem.delta[j]);
  }
  const double reach = std::sqrt(sum_g2) + sum_abs_delta + 1e-30;

  std::vector<double> ascending;
  ascending.reserve(n + 1);

  // Outermost root below the smallest pole.  The norm bound guarantees the
  // sign change; expand a few times in case the bound lands on the root.
  {
    double lo = poles.front() - reach;
    double flo = secular_function(problem, lo);
    const double fhi = secular_function(problem, poles.front());
    int expand = 0;
    while (flo != 0.0 && (flo < 0.0) == (fhi < 0.0)) {
      lo -= reach;
      flo = secular_function(problem, lo);
      if (++expand > 60)
        throw SolverError("find_roots: lower bracket failed (check couplings)");
    }
    ascending.push_back(refine_root(problem, lo, poles.front(), flo, fhi));
  }

  // One root strictly between each pair of consecutive poles; the sign of p
  // at a pole is -g_j^2 * prod_{k != j}(Delta_j - Delta_k), which alternates.
  for (int i = 0; i + 1 < n; ++i) {
    const double flo = secular_function(problem, poles[i]);
    const double fhi = secular_function(problem, poles[i + 1]);
    if (flo != 0.0 && fhi != 0.0 && (flo < 0.0) == (fhi < 0.0))
      throw SolverError("find_roots: interior bracket failed between detunings " +
                        std::to_string(poles[i]) + " and " +
                        std::to_string(poles[i + 1]));
    ascending.push_back(refine_root(problem, poles[i], poles[i + 1], flo, fhi));
  }

  // Outermost root above the largest pole.
  {
    double hi = poles.back() + reach;
    const double flo = secular_function(problem, poles.back());
    double fhi = secular_function(problem, hi);
    int expand = 0;
    while (fhi != 0.0 && (fhi < 0.0) == (flo < 0.0)) {
      hi += reach;
      fhi = secular_function(problem, hi);
      if (++expand > 60)
        throw SolverError("find_roots: upper bracket failed (check couplings)");
    }
    ascending.push_back(refine_root(problem, poles.back(), hi, flo, fhi));
  }

  std::sort(ascending.begin(), ascending.end());

  // lambda_{n+1} is the largest root; lambda_1..lambda_n descend from the
  // second largest.
  std::vector<double> ordered(n + 1);
  ordered[n] = ascending[n];
  for (int j = 1; j <= n; ++j) ordered[j - 1] = ascending[n - j];
  return ordered;
}

std::vector<double> residues(const SecularProblem& problem,
                             std::span<const double> lambdas) {
  const int n = problem.n();
  if (static_cast<int>(lambdas.size()) != n + 1)
    throw ConfigError("residues: expected n+1 roots");

  std::vector<double> alphas(n + 1);
  for (int j = 0; j <= n; ++j) {
    double q = 1.0;
    for (int k = 0; k < n; ++k) q *= lambdas[j] - problem.delta[k];
    const double dp = secular_derivative(problem, lambdas[j]);
    if (std::abs(dp) < 1e-300)
      throw SolverError("residues: p'(lambda) ~ 0 at root " + std::to_string(j) +
                        " (lambda = " + std::to_string(lambdas[j]) +
                        "); detunings nearly degenerate");
    alphas[j] = q / dp;
  }

  const double total = std::accumulate(alphas.begin(), alphas.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12)
    throw SolverError("residues: sum deviates from 1 by " +
                      std::to_string(total - 1.0));
  return alphas;
}

}  // namespace plexsim

#pragma once

#include <span>
#include <vector>

#include "plexsim/errors.hpp"

namespace plexsim {

// Lossless coupling problem: couplings g_j > 0 and pairwise distinct
// detunings Delta_j, both in rad/fs.  Zero couplings are rejected here
// because a decoupled mode collapses a root bracket; drop the mode instead.
struct SecularProblem {
  std::vector<double> g;
  std::vector<double> delta;

  SecularProblem(std::vector<double> g_in, std::vector<double> delta_in);
  int n() const { return static_cast<int>(g.size()); }
};

// p(lambda) = lambda * prod_j (lambda - Delta_j)
//           - sum_j g_j^2 * prod_{k != j} (lambda - Delta_k),
// evaluated in product form.  Its n+1 real zeros are the hybridized
// frequencies; between consecutive sorted detunings the sign alternates,
// which is what guarantees the root brackets.
double secular_function(const SecularProblem& problem, double lambda);

// p'(lambda), evaluated analytically by the product rule (leave-one-out
// prefix/suffix products; no divisions, valid at the poles too).
double secular_derivative(const SecularProblem& problem, double lambda);

// All n+1 real roots, each bracketed between consecutive sorted detunings
// (outer roots bracketed by a norm bound), bisected and then polished with
// safeguarded Newton.  Returned in the ordering convention
// lambda_n < ... < lambda_1 < lambda_{n+1}: index j-1 holds lambda_j for
// j = 1..n (descending), index n holds lambda_{n+1}, the largest root.
std::vector<double> find_roots(const SecularProblem& problem);

// Partial-fraction residues alpha_j = prod_k (lambda_j - Delta_k) / p'(lambda_j),
// aligned with the ordering of `lambdas`.  sum alpha_j = 1 is checked
// internally to 1e-12.
std::vector<double> residues(const SecularProblem& problem,
                             std::span<const double> lambdas);

}  // namespace plexsim

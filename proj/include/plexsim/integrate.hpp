#pragma once

#include <functional>
#include <limits>
#include <span>

#include <Eigen/Dense>

#include "plexsim/errors.hpp"

namespace plexsim {

struct IntegratorOptions {
  double tol = 1e-10;  // used as both absolute and relative tolerance
  double max_step = std::numeric_limits<double>::infinity();
};

// Guaranteed convergence order of sampled output under step refinement.
// The pair is 5(4) but the dense-output interpolant caps the declared order.
inline constexpr int integrator_order = 4;

using OdeRhs = std::function<void(double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dydt)>;

// Adaptive Dormand-Prince 5(4) with 4th-order dense output.  Integrates
// y' = f(t, y) from t_samples.front() and fills one column of `out` per
// sample time (t_samples must be non-decreasing; the first sample is the
// initial condition).  Throws SolverError on step-size underflow or
// non-finite state, reporting the time reached and the last step size.
void integrate_dp45(const OdeRhs& f, const Eigen::VectorXcd& y0,
                    std::span<const double> t_samples,
                    const IntegratorOptions& options, Eigen::MatrixXcd& out);

}  // namespace plexsim

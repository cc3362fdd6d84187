#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "plexsim/integrate.hpp"
#include "plexsim/model.hpp"
#include "plexsim/trace.hpp"

namespace plexsim {

// Single-excitation amplitudes along a trajectory; row 0 of `amplitudes`
// is the emitter amplitude c_0, row xi the mode amplitudes.
struct AmplitudeTrajectory {
  std::vector<double> times;    // fs
  Eigen::MatrixXcd amplitudes;  // (n+1) x samples
  double tol = 0.0;

  std::complex<double> c0(size_t i) const { return amplitudes(0, i); }
};

// Density-matrix trajectory in the sink-extended basis.
struct DensityTrajectory {
  std::vector<double> times;
  std::vector<Eigen::MatrixXcd> rho;  // (n+2) x (n+2) per sample
  double max_trace_drift = 0.0;
  double tol = 0.0;
};

// i dpsi/dt = H psi from psi(0) = (1, 0, ..., 0).  Works for the
// complex-diagonal (lossy) Hamiltonian, in which case the norm decays.
AmplitudeTrajectory propagate_schrodinger(const ArrowheadHamiltonian& h,
                                          std::span<const double> t_grid,
                                          double tol = 1e-10,
                                          double max_step = 0.0);

// Master-equation propagation from rho(0) = |e><e| (or a caller-supplied
// initial state).  Aborts if the trace drifts by more than 100 * tol.
DensityTrajectory propagate_lindblad(const LindbladGenerator& gen,
                                     std::span<const double> t_grid,
                                     double tol = 1e-10);
DensityTrajectory propagate_lindblad(const LindbladGenerator& gen,
                                     const Eigen::MatrixXcd& rho0,
                                     std::span<const double> t_grid,
                                     double tol = 1e-10);

PopulationTrace emitter_population(const AmplitudeTrajectory& traj);
PopulationTrace emitter_population(const DensityTrajectory& traj);

}  // namespace plexsim

#include "plexsim/dynamics.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace plexsim {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

AmplitudeTrajectory propagate_schrodinger(const ArrowheadHamiltonian& h,
                                          std::span<const double> t_grid,
                                          double tol, double max_step) {
  const int dim = h.dim();
  const Eigen::VectorXcd diag = h.diagonal;
  const Eigen::VectorXd arrow = h.arrow;

  const OdeRhs rhs = [&](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dydt) {
    // dydt = -i H y with the arrowhead applied directly.
    std::complex<double> coupled = 0.0;
    for (int xi = 0; xi < dim - 1; ++xi) coupled += arrow(xi) * y(xi + 1);
    dydt(0) = -kI * (diag(0) * y(0) + coupled);
    for (int xi = 0; xi < dim - 1; ++xi)
      dydt(xi + 1) = -kI * (arrow(xi) * y(0) + diag(xi + 1) * y(xi + 1));
  };

  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
  psi0(0) = 1.0;

  IntegratorOptions options;
  options.tol = tol;
  if (max_step > 0.0) options.max_step = max_step;

  AmplitudeTrajectory traj;
  traj.times.assign(t_grid.begin(), t_grid.end());
  traj.tol = tol;
  integrate_dp45(rhs, psi0, t_grid, options, traj.amplitudes);
  return traj;
}

DensityTrajectory propagate_lindblad(const LindbladGenerator& gen,
                                     std::span<const double> t_grid, double tol) {
  Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(gen.dim(), gen.dim());
  rho0(0, 0) = 1.0;
  return propagate_lindblad(gen, rho0, t_grid, tol);
}

DensityTrajectory propagate_lindblad(const LindbladGenerator& gen,
                                     const Eigen::MatrixXcd& rho0,
                                     std::span<const double> t_grid, double tol) {
  const int d = gen.dim();
  if (rho0.rows() != d || rho0.cols() != d)
    throw SolverError("propagate_lindblad: initial state has wrong dimension");

  const OdeRhs rhs = [&](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dydt) {
    dydt.noalias() = gen.superoperator * y;
  };

  Eigen::Map<const Eigen::VectorXcd> rho0_vec(rho0.data(), d * d);
  IntegratorOptions options;
  options.tol = tol;

  Eigen::MatrixXcd columns;
  integrate_dp45(rhs, rho0_vec, t_grid, options, columns);

  const double trace0 = rho0.trace().real();
  DensityTrajectory traj;
  traj.times.assign(t_grid.begin(), t_grid.end());
  traj.tol = tol;
  traj.rho.reserve(t_grid.size());
  for (Eigen::Index i = 0; i < columns.cols(); ++i) {
    Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(columns.col(i).data(), d, d);
    const double drift = std::abs(rho.trace().real() - trace0);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    if (drift > 100.0 * tol)
      throw SolverError("propagate_lindblad: trace drift " + std::to_string(drift) +
                        " at t = " + std::to_string(traj.times[i]) + " fs");
    traj.rho.push_back(std::move(rho));
  }
  return traj;
}

PopulationTrace emitter_population(const AmplitudeTrajectory& traj) {
  PopulationTrace trace;
  trace.times = traj.times;
  trace.meta.solver_path = "schrodinger";
  trace.meta.tol = traj.tol;
  trace.values.resize(traj.times.size());
  for (size_t i = 0; i < traj.times.size(); ++i) trace.values[i] = std::norm(traj.c0(i));
  return trace;
}

PopulationTrace emitter_population(const DensityTrajectory& traj) {
  PopulationTrace trace;
  trace.times = traj.times;
  trace.meta.solver_path = "lindblad";
  trace.meta.tol = traj.tol;
  trace.values.resize(traj.times.size());
  for (size_t i = 0; i < traj.times.size(); ++i) trace.values[i] = traj.rho[i](0, 0).real();
  return trace;
}

}  // namespace plexsim

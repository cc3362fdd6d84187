#pragma once

#include <Eigen/Dense>

#include "plexsim/config.hpp"

namespace plexsim {

// Single-excitation Hamiltonian in the frame rotating at the emitter
// frequency.  Basis: index 0 = emitter excited, index xi = one photon in
// mode xi.  Diagonal entry 0 is the emitter (0 by convention); entry xi is
// -Delta_xi - i kappa_xi / 2; the arrow holds the couplings g_xi.
struct ArrowheadHamiltonian {
  int n_modes = 0;
  Eigen::VectorXcd diagonal;  // n+1
  Eigen::VectorXd arrow;      // n
  bool lossless = true;

  int dim() const { return n_modes + 1; }
  Eigen::MatrixXcd dense() const;
};

ArrowheadHamiltonian build_hamiltonian(const SystemConfig& config, bool lossless);

// Lindblad generator on the single-excitation sector plus the zero-excitation
// sink.  Basis: 0 = emitter excited, 1..n = one photon in mode xi,
// n+1 = sink (everything decayed).  The superoperator acts on column-stacked
// density matrices; jumps are the mode lowering operators a_xi with rates
// kappa_xi.  This truncation is exact for the model: the initial state has
// one excitation, the Hamiltonian conserves excitation number, and the jump
// operators only lower it (verified by test against the Schrodinger paths).
struct LindbladGenerator {
  int n_modes = 0;
  Eigen::MatrixXcd hamiltonian;    // (n+2) x (n+2), Hermitian
  Eigen::VectorXd kappas;          // n
  Eigen::MatrixXcd superoperator;  // (n+2)^2 x (n+2)^2

  int dim() const { return n_modes + 2; }
  // d(rho)/dt for a density matrix in the truncated basis.
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
};

LindbladGenerator build_lindblad(const SystemConfig& config);

}  // namespace plexsim

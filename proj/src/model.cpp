#include "plexsim/model.hpp"

#include <complex>

namespace plexsim {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

Eigen::MatrixXcd ArrowheadHamiltonian::dense() const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) h(i, i) = diagonal(i);
  for (int xi = 0; xi < n_modes; ++xi) {
    h(0, xi + 1) = arrow(xi);
    h(xi + 1, 0) = arrow(xi);
  }
  return h;
}

ArrowheadHamiltonian build_hamiltonian(const SystemConfig& config, bool lossless) {
  const bool drop_loss = lossless || config.lossless;
  const auto d = detunings(config);
  const auto g = couplings(config);
  const int n = config.n_modes();

  ArrowheadHamiltonian h;
  h.n_modes = n;
  h.lossless = drop_loss;
  h.diagonal = Eigen::VectorXcd::Zero(n + 1);
  h.arrow = Eigen::VectorXd::Zero(n);
  for (int xi = 0; xi < n; ++xi) {
    const double kappa = drop_loss ? 0.0 : config.modes[xi].kappa;
    h.diagonal(xi + 1) = complex<double>(-d[xi], -0.5 * kappa);
    h.arrow(xi) = g[xi];
  }
  return h;
}

Eigen::MatrixXcd LindbladGenerator::apply(const Eigen::MatrixXcd& rho) const {
  const int d = dim();
  Eigen::MatrixXcd out(d, d);
  Eigen::Map<Eigen::VectorXcd> out_vec(out.data(), d * d);
  Eigen::Map<const Eigen::VectorXcd> rho_vec(rho.data(), d * d);
  out_vec = superoperator * rho_vec;
  return out;
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

LindbladGenerator build_lindblad(const SystemConfig& config) {
  const int n = config.n_modes();
  const int d = n + 2;

  // Hermitian part: the lossless arrowhead extended by the uncoupled sink.
  const ArrowheadHamiltonian arrow = build_hamiltonian(config, /*lossless=*/true);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  h.topLeftCorner(d - 1, d - 1) = arrow.dense();

  LindbladGenerator gen;
  gen.n_modes = n;
  gen.hamiltonian = h;
  gen.kappas = Eigen::VectorXd::Zero(n);

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  // vec(A rho B) = (B^T kron A) vec(rho), column stacking.
  Eigen::MatrixXcd super = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (int xi = 0; xi < n; ++xi) {
    const double kappa = config.lossless ? 0.0 : config.modes[xi].kappa;
    gen.kappas(xi) = kappa;
    if (kappa == 0.0) continue;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    a(d - 1, xi + 1) = 1.0;  // |sink><xi|
    const Eigen::MatrixXcd num = a.adjoint() * a;
    super += kappa * (kron(a.conjugate(), a) -
                      0.5 * kron(id, num) - 0.5 * kron(num.transpose(), id));
  }
  gen.superoperator = std::move(super);
  return gen;
}

}  // namespace plexsim

#include "plexsim/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace plexsim {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;

// Error weights (5th-order solution minus the embedded 4th-order one).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Dense-output polynomial: y(t0 + th*h) = y0 + h * sum_i k_i * q_i(th),
// q_i(th) = sum_j P[i][j] * th^(j+1).
constexpr double P[7][4] = {
    {1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0,
     -12715105075.0 / 11282082432.0},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0,
     87487479700.0 / 32700410799.0},
    {0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0,
     -10690763975.0 / 1880347072.0},
    {0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0,
     701980252875.0 / 199316789632.0},
    {0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0,
     -1453857185.0 / 822651844.0},
    {0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0,
     69997945.0 / 29380423.0}};

double scaled_error(const Eigen::VectorXcd& err, const Eigen::VectorXcd& y0,
                    const Eigen::VectorXcd& y1, double tol) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double scale = tol + tol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    worst = std::max(worst, std::abs(err(i)) / scale);
  }
  return worst;
}

}  // namespace

void integrate_dp45(const OdeRhs& f, const Eigen::VectorXcd& y0,
                    std::span<const double> t_samples,
                    const IntegratorOptions& options, Eigen::MatrixXcd& out) {
  if (t_samples.empty()) return;
  if (!(options.tol >= 1e-14 && options.tol <= 1e-4))
    throw SolverError("integrate: tol must lie in [1e-14, 1e-4]");
  for (size_t i = 1; i < t_samples.size(); ++i)
    if (t_samples[i] < t_samples[i - 1])
      throw SolverError("integrate: sample times must be non-decreasing");

  const Eigen::Index dim = y0.size();
  out.resize(dim, static_cast<Eigen::Index>(t_samples.size()));

  double t = t_samples.front();
  const double t_end = t_samples.back();
  Eigen::VectorXcd y = y0;

  size_t next_sample = 0;
  while (next_sample < t_samples.size() && t_samples[next_sample] <= t) {
    out.col(next_sample) = y;
    ++next_sample;
  }
  if (next_sample >= t_samples.size()) return;

  Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  Eigen::VectorXcd ytmp(dim), ynew(dim), err(dim);
  f(t, y, k1);

  const double span = t_end - t;
  double h = std::min(options.max_step, span / 100.0);
  if (!(h > 0.0)) h = span;

  while (t < t_end) {
    const double h_floor = 16.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(t), 1.0);
    if (t_end - t <= h_floor) break;  // numerically at the end of the span
    if (h < h_floor)
      throw SolverError("integrate: step size underflow at t = " + std::to_string(t) +
                        " fs (h = " + std::to_string(h) + ")");
    h = std::min({h, options.max_step, t_end - t});

    ytmp = y + h * (a21 * k1);
    f(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h, ytmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(t + h, ynew, k7);  // FSAL

    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double error = scaled_error(err, y, ynew, options.tol);
    if (!std::isfinite(error)) error = std::numeric_limits<double>::max();
    // Error-per-unit-step: each step may spend tol * (h / span) of the
    // budget, so the accumulated error over the whole span stays at the
    // requested tolerance (the 10x norm-drift contract relies on this).
    const double budget = h / span;

    if (error <= budget) {
      if (!ynew.allFinite())
        throw SolverError("integrate: non-finite state at t = " +
                          std::to_string(t + h) + " fs (h = " + std::to_string(h) + ")");

      // Emit all samples inside (t, t+h] through the dense interpolant.
      while (next_sample < t_samples.size() && t_samples[next_sample] <= t + h) {
        const double th = (t_samples[next_sample] - t) / h;
        double q[7];
        for (int i = 0; i < 7; ++i)
          q[i] = ((P[i][3] * th + P[i][2]) * th + P[i][1]) * th * th + P[i][0] * th;
        out.col(next_sample) = y + h * (q[0] * k1 + q[1] * k2 + q[2] * k3 +
                                        q[3] * k4 + q[4] * k5 + q[5] * k6 + q[6] * k7);
        ++next_sample;
      }

      t += h;
      y.swap(ynew);
      k1.swap(k7);
      const double grow = error > 0.0 ? 0.9 * std::pow(budget / error, 0.2) : 5.0;
      h *= std::clamp(grow, 0.2, 5.0);
    } else {
      h *= std::clamp(0.9 * std::pow(budget / error, 0.2), 0.1, 0.9);
    }
  }

  // Trailing samples exactly at t_end (duplicates allowed).
  while (next_sample < t_samples.size()) {
    out.col(next_sample) = y;
    ++next_sample;
  }
}

}  // namespace plexsim

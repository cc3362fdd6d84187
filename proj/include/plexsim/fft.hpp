#pragma once

#include <complex>
#include <vector>

namespace plexsim {

// Forward DFT, X_k = sum_t x_t exp(-2*pi*i*k*t/N), any length N >= 1.
// Power-of-two lengths use iterative radix-2; other lengths go through the
// Bluestein chirp-z reduction to a padded power-of-two convolution.
std::vector<std::complex<double>> fft(std::vector<std::complex<double>> x);

}  // namespace plexsim

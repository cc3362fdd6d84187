#include "plexsim/fft.hpp"

#include <cmath>
#include <numbers>

namespace plexsim {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2, n a power of two.  sign = -1 forward.
void fft_radix2(std::vector<cd>& a, int sign) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double angle = sign * 2.0 * kPi / static_cast<double>(len);
    const cd wlen(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      cd w(1.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const cd u = a[i + k];
        const cd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Bluestein: X_k = conj(w_k) * sum_t x_t w_t * conj(w_{k-t}),
// w_m = exp(-i*pi*m^2/N); the convolution runs on a power-of-two length.
std::vector<cd> fft_bluestein(const std::vector<cd>& x) {
  const size_t n = x.size();
  std::vector<cd> w(n);
  for (size_t m = 0; m < n; ++m) {
    // m^2 mod 2n keeps the chirp phase argument small for large n.
    const size_t m2 = (m * m) % (2 * n);
    const double phase = -kPi * static_cast<double>(m2) / static_cast<double>(n);
    w[m] = cd(std::cos(phase), std::sin(phase));
  }

  size_t len = 1;
  while (len < 2 * n - 1) len <<= 1;
  std::vector<cd> a(len, cd(0.0)), b(len, cd(0.0));
  for (size_t t = 0; t < n; ++t) a[t] = x[t] * w[t];
  for (size_t m = 0; m < n; ++m) {
    b[m] = std::conj(w[m]);
    if (m != 0) b[len - m] = std::conj(w[m]);
  }

  fft_radix2(a, -1);
  fft_radix2(b, -1);
  for (size_t i = 0; i < len; ++i) a[i] *= b[i];
  fft_radix2(a, +1);
  const double inv = 1.0 / static_cast<double>(len);

  std::vector<cd> out(n);
  for (size_t k = 0; k < n; ++k) out[k] = w[k] * a[k] * inv;
  return out;
}

}  // namespace

std::vector<cd> fft(std::vector<cd> x) {
  if (x.size() <= 1) return x;
  if (is_pow2(x.size())) {
    fft_radix2(x, -1);
    return x;
  }
  return fft_bluestein(x);
}

}  // namespace plexsim

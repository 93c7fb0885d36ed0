#include "unif/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace unif {

void fft_pow2(std::vector<Complex>& data, bool invert) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_pow2: length not a power of two");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (invert ? 1.0 : -1.0);
    const Complex wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        Complex u = data[i + j];
        Complex v = data[i + j + len / 2] * w;
        data[i + j] = u + v;
        data[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<Complex> autocorrelation(const std::vector<Complex>& v) {
  const std::size_t n = v.size();
  if (n == 0) return {};
  const std::size_t p = next_pow2(2 * n - 1);

  std::vector<Complex> a(p, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) a[i] = v[i];
  fft_pow2(a, false);
  for (std::size_t i = 0; i < p; ++i) a[i] = a[i] * std::conj(a[i]);
  fft_pow2(a, true);

  // a now holds p * circular-correlation; lag h >= 0 at index h, lag h < 0
  // at index p + h.
  std::vector<Complex> out(2 * n - 1);
  const double inv = 1.0 / static_cast<double>(p);
  for (std::size_t h = 0; h < n; ++h) out[n - 1 + h] = a[h] * inv;
  for (std::size_t h = 1; h < n; ++h) out[n - 1 - h] = a[p - h] * inv;
  return out;
}

}  // namespace unif

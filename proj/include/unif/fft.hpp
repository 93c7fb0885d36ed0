// fft.hpp - Radix-2 FFT and zero-padded autocorrelation.
//
// Lengths are always rounded up to a power of two so that circular
// correlation equals linear correlation after padding.

#pragma once

#include <complex>
#include <vector>

namespace unif {

using Complex = std::complex<double>;

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// In-place iterative radix-2 FFT. data.size() must be a power of two.
// invert=true computes the unscaled inverse transform (caller divides by n).
void fft_pow2(std::vector<Complex>& data, bool invert);

// Linear autocorrelation a(h) = sum_x v[x+h] * conj(v[x]) for
// h = -(n-1), ..., n-1, returned as a vector of length 2n-1 with a(h) at
// index h + n - 1. Computed by zero-padded FFT of length >= 2n-1.
std::vector<Complex> autocorrelation(const std::vector<Complex>& v);

}  // namespace unif

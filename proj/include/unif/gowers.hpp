// gowers.hpp - U^s norms (global and localized), Gowers box norms, the
// U^s inner product, Gowers-Cauchy-Schwarz checks, and the constructive
// U^2 inverse.
//
// All "norm" functions return the 2^s (resp. 2^d) power of the norm, which
// for indicator signals is an exact additive count.

#pragma once

#include "unif/signal.hpp"

#include <vector>

namespace unif {

struct BoxSpec {
  // Each direction set Q_i, materialized as an explicit list of integers.
  std::vector<std::vector<long long>> directions;

  // Q = step * [len] = {step, 2*step, ..., len*step}.
  static BoxSpec progressions(const std::vector<std::pair<long long, long long>>& step_len);
};

struct Frequency {
  double beta = 0.0;         // element of T, stored in [0, 1)
  double correlation = 0.0;  // |sum_x f(x) e(beta x)| at beta
};

struct GcsReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// ||f||_{U^s}^{2^s}. s = 1 gives |sum f|^2. s = 2 uses zero-padded FFT
// autocorrelation; s >= 3 recurses over the differencing parameter
// restricted to support(f) - support(f). In exact-integer mode the result
// is an exact count (accumulated in integers).
Complex u_norm_pow(const Signal& f, int s);

// ||f||_{U^s(u+qZ)}^{2^s} = ||f * 1_{u+qZ}||_{U^s}^{2^s}, computed on the
// subsampled signal (tuples with any point off the progression vanish).
double u_norm_local_pow(const Signal& f, int s, long long u, long long q);

// ||f||_{box^d_{Q_1..Q_d}}^{2^d}.
Complex box_norm_pow(const Signal& f, const BoxSpec& spec);

// U^s inner product [f_omega]_{U^s}; fs has exactly 2^s entries indexed by
// the bitmask of omega (bit i = omega_{i+1}; omega = 0 is the base point).
Complex gowers_inner(const std::vector<Signal>& fs, int s);

// Gowers-Cauchy-Schwarz: |[f_omega]| vs prod ||f_omega||_{U^s}.
GcsReport gcs_check(const std::vector<Signal>& fs, int s);

// Largest-correlation frequency: argmax over a power-of-two DFT grid of
// size >= grid_factor * width, then ternary refinement of |sum f(x)e(bx)|
// until the bracket is narrower than 1e-12. Ties break to the smallest
// grid index.
Frequency u2_inverse(const Signal& f, int grid_factor);

// |sum_x f(x) e(beta x)|.
double phase_correlation(const Signal& f, double beta);

}  // namespace unif

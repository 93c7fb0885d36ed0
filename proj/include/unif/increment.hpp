// increment.hpp - Density-increment search over arithmetic-progression
// windows and the full iteration loop on concrete sets.

#pragma once

#include "unif/counting.hpp"
#include "unif/degree.hpp"
#include "unif/gowers.hpp"
#include "unif/rational.hpp"

#include <vector>

namespace unif {

struct IncrementStep {
  long long i = 0;
  long long N = 1;
  long long q = 1;
  Rational alpha{0, 1};      // |A_i| / N_i
  long long qprime = 1;
  long long a = 0;
  long long Nprime = 1;
  Rational alpha_new{0, 1};  // |A_i cap (a + q*qprime*[Nprime])| / Nprime
};

enum class IterateStatus { kProgressionFound, kNTooSmall, kDensityCapped, kMaxSteps };

struct IncrementTrace {
  std::vector<IncrementStep> steps;
  IterateStatus status = IterateStatus::kMaxSteps;
  ProgressionWitness witness;  // valid iff status == kProgressionFound
  long long final_N = 0;
  long long final_q = 1;
  Rational final_alpha{0, 1};
};

// A' = {n in [Nprime] : a + step*n in A}.
std::vector<long long> rescale_set(const std::vector<long long>& A, long long a, long long step,
                                   long long Nprime);

struct IncrementResult {
  IncrementStep step;
  Frequency fourier_peak;    // u2_inverse on 1_A - alpha*1_[N]
  RationalApprox denom_hint;  // find_denominator on the peak frequency
};

// Exhaustive search over qprime in [qprime_max], Nprime on a ratio-2
// geometric grid in [nprime_min, nprime_max] refined +-25% around the
// best, and all window offsets a with a + q*qprime*[Nprime] inside [N],
// maximizing window density. Ties break to the smallest qprime, then
// Nprime, then a. The Fourier modulus hint is reported alongside.
IncrementResult find_increment(const std::vector<long long>& A, const ProgressionInstance& inst,
                               long long qprime_max, long long nprime_min, long long nprime_max);

struct IterateParams {
  long long qprime_max = 8;
  long long nprime_min = 10;
  long long nprime_max = 0;  // 0: use M of the current instance
  long long max_steps = 16;
  long long floor_N = 100;   // stop below this
};

// The iteration loop: stop with a verified witness as soon as A_i contains
// a configuration; otherwise increment, rescale with step q_i*qprime and
// transport the modulus as q_{i+1} = q_i^2*qprime.
IncrementTrace iterate_increment(const std::vector<long long>& A, long long N, long long q0,
                                 const IterateParams& params);

}  // namespace unif

// counting.hpp - The counting operator for the x, x+y, x+q*y^2
// configuration, progression enumeration, dual functions, and fixture
// generators for the increment experiments.

#pragma once

#include "unif/signal.hpp"
#include "unif/vdc.hpp"

#include <cstdint>
#include <vector>

namespace unif {

struct ProgressionInstance {
  long long N = 1;
  long long q = 1;
  long long M = 1;  // floor(sqrt(N/q))

  static ProgressionInstance make(long long N, long long q);
};

struct ProgressionWitness {
  long long x = 0;
  long long y = 0;  // 1 <= y <= M
};

// sum_x sum_{y in [M]} f0(x) f1(x+y) f2(x+q*y^2).
Complex lambda(const Signal& f0, const Signal& f1, const Signal& f2, const ProgressionInstance& inst);

// All (x, y) with y in [M] and {x, x+y, x+q*y^2} subset of A.
std::vector<ProgressionWitness> enumerate_progressions(const std::vector<long long>& A,
                                                       const ProgressionInstance& inst);

// F(x) = (1/M) sum_{y in [M]} f0(x - q*y^2) f1(x + y - q*y^2); satisfies
// lambda(f0, f1, f2) = M * sum_x F(x) f2(x).
Signal dual_function(const Signal& f0, const Signal& f1, const ProgressionInstance& inst);

// Greedy progression-free fixture: scans n = 1..N and keeps n iff the set
// stays free of configurations.
std::vector<long long> greedy_free_set(const ProgressionInstance& inst);

// Random set with density alpha_in on the progression a + q*qprime*[Nprime]
// and alpha_out elsewhere on [N]; the planted ground truth for the
// increment search.
std::vector<long long> planted_increment_set(long long N, long long q, long long qprime, long long a,
                                             long long Nprime, double alpha_in, double alpha_out,
                                             std::uint64_t seed);

}  // namespace unif

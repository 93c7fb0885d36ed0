// vdc.hpp - Triangular difference-count weights, van der Corput's
// inequality as a checkable report, and the triple box-norm average
// functional driving the concatenation experiments.

#pragma once

#include "unif/rational.hpp"
#include "unif/signal.hpp"

#include <utility>
#include <vector>

namespace unif {

// Weight mu_{delta,M}(h) = #{(h1,h2) in [H]^2 : h1 - h2 = h} / (delta^2 M)
// with H = floor(delta*M). The unnormalized count H - |h| is the r_{[H]}
// of van der Corput's inequality.
class TriangularWeight {
 public:
  TriangularWeight(Rational delta, long long M);

  long long M() const { return m_; }
  long long H() const { return h_; }
  const Rational& delta() const { return delta_; }

  // r_{[H]}(h) = max(0, H - |h|), an exact integer.
  long long r(long long h) const {
    long long a = h < 0 ? -h : h;
    return a >= h_ ? 0 : h_ - a;
  }

  double value(long long h) const { return static_cast<double>(r(h)) * norm_; }

  // Exact total mass sum_h value(h) = H^2 / (delta^2 M).
  Rational mass_exact() const;

  // sum_h r(h) = H^2, exactly.
  long long unnormalized_mass() const { return h_ * h_; }

 private:
  Rational delta_;
  long long m_ = 0;
  long long h_ = 0;
  double norm_ = 0.0;  // 1 / (delta^2 M)
};

TriangularWeight mu(const Rational& delta, long long M);

struct VdcReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// |sum_{y in [M]} g(y)|^2 <= ((M+H)/H^2) sum_h r_{[H]}(h)
//                            sum_{y in [M] cap ([M]-h)} g(y+h) conj(g(y)).
VdcReport vdc_check(const Signal& g, long long M, long long H);

struct Params {
  long long N = 1;
  long long q = 1;
  long long M = 1;  // floor(sqrt(N/q))

  static Params make(long long N, long long q);
};

enum class BoxAvgMode { kAuto, kExact, kMonteCarlo };

struct BoxAvgResult {
  double value = 0.0;
  long long pairs_evaluated = 0;
  bool monte_carlo = false;
};

// E_{a,b in [floor(delta2*M)]} sum_{x,h1,h2,h3}
//   mu_{delta3,M}(h1) mu_{delta3,M}(h2) mu_{delta3,M}(h3)
//   Delta_{2q(a+b)h1, 2qb h2, 2qa h3} f(x).
// Exact over the full (a,b) grid by default below M = 64; Monte Carlo
// subsampling of pairs (seeded) otherwise.
BoxAvgResult triple_box_average_full(const Signal& f, const Params& params, const Rational& delta2,
                                     const Rational& delta3, BoxAvgMode mode = BoxAvgMode::kAuto,
                                     std::uint64_t seed = 0, long long max_pairs = 1024);

double triple_box_average(const Signal& f, const Params& params, const Rational& delta2,
                          const Rational& delta3);

// Weighted box power sum_{h_1..h_d} prod_i w_i(h_i) *
// Delta_{c_1 h_1, ..., c_d h_d} f summed over x. Shared by the triple
// average and the ||.||_b norm.
Complex weighted_box_pow(const Signal& f,
                         const std::vector<std::pair<long long, const TriangularWeight*>>& dirs);

}  // namespace unif

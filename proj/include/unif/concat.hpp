// concat.hpp - The ||.||_b norm, the constructive arithmetic box-norm
// inverse, gcd tail statistics, the three-dimensional box correlation
// bound, and the two-sided concatenation experiment.

#pragma once

#include "unif/rational.hpp"
#include "unif/signal.hpp"
#include "unif/vdc.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace unif {

struct FeasibilityError : std::runtime_error {
  double estimated_ops;
  explicit FeasibilityError(double ops)
      : std::runtime_error("operation count estimate " + std::to_string(ops) + " exceeds the feasibility guard"),
        estimated_ops(ops) {}
};

// ||f||_b^4 = E_{a in [floor(delta1*M)]} sum_{x,h1,h2}
//   mu_{delta2,M}(h1) mu_{delta2,M}(h2) Delta_{2q(a+b)h1, 2qa h2} f(x).
double b_norm_pow(const Signal& f, long long b, const Params& params, const Rational& delta1,
                  const Rational& delta2);

struct FactorPair {
  Signal l;
  Signal r;
  long long c = 1;
  long long d = 1;
  double correlation = 0.0;  // |sum_x f(x) l(x) r(x)|, recomputed
  // Diagnostics from the search.
  double gamma = 0.0;        // frequency attached to the y factor
  double gamma_prime = 0.0;  // frequency attached to the z factor
  long long exceptional_count = 0;  // #{x in supp f : l(x) != l(x+dz) for some z in [eps*M]}
};

// Constructive inverse for the box norm with directions c*[..], d*[..]:
// factors f against l(x) r(x) with r exactly c-periodic, by maximizing the
// factored correlation over pivot cells (y', z') of F(y,z) = f(cy+dz) and
// frequencies (gamma, gamma') on DFT grids of density grid_factor, with
// ternary refinement. When gcd(c, d) = m > 1 the problem splits into m
// residue classes that are solved independently and phase-aligned.
// delta2 sets the epsilon of the reported exceptional-set count.
FactorPair invert_arithmetic_box(const Signal& f, long long c, long long d, const Rational& delta2,
                                 int grid_factor);

// Exact #{(a,b) in [X]^2 : gcd(a,b) > Y} / X^2.
Rational gcd_tail_proportion(long long X, long long Y);

// Function on X1 x X2 x X3, stored flat in x3-fastest order.
struct Tensor3 {
  std::array<long long, 3> dims{0, 0, 0};
  std::vector<Complex> v;

  Complex& at(long long i, long long j, long long k) {
    return v[static_cast<std::size_t>((i * dims[1] + j) * dims[2] + k)];
  }
  Complex at(long long i, long long j, long long k) const {
    return v[static_cast<std::size_t>((i * dims[1] + j) * dims[2] + k)];
  }
};

struct Box3Report {
  double corr = 0.0;
  double box = 0.0;
  bool holds = false;
};

// |E f g1 g2 g3| <= ||f||_{box(X1,X2,X3)} for g_i independent of
// coordinate i (validated; violations are rejected).
Box3Report box3_correlation_check(const Tensor3& f, const Tensor3& g1, const Tensor3& g2,
                                  const Tensor3& g3);

struct ConcatReport {
  double lhs = 0.0;  // triple box average (range delta1, weights delta2)
  double rhs = 0.0;  // E_{u in [q]} ||f||_{U^5(u+qZ)}^{2^5}
  long long N = 0;
  long long q = 0;
  long long M = 0;
};

// Both sides of the concatenation inequality frame; no inequality is
// asserted, the report feeds monotonicity studies. Guarded by a U^5
// operation-count estimate.
ConcatReport concat_experiment(const Signal& f, const Params& params, const Rational& delta1,
                               const Rational& delta2, const Rational& delta3);

// Operation-count estimate for the localized U^5 evaluation; the guard
// threshold used by concat_experiment.
double u5_ops_estimate(long long width);
inline constexpr double kU5OpsGuard = 4e9;

}  // namespace unif

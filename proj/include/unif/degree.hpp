// degree.hpp - Phase extraction from multiplicative derivatives of dual
// functions, cube-set combinatorics, major-arc denominator finding, and
// the degree-lowering pipeline at s = 3.

#pragma once

#include "unif/counting.hpp"
#include "unif/gowers.hpp"
#include "unif/rational.hpp"
#include "unif/signal.hpp"

#include <array>
#include <functional>
#include <map>
#include <vector>

namespace unif {

// phi: h-tuple -> (beta, correlation) from the U^2 inverse applied to the
// corresponding multiplicative derivative.
struct PhaseTable {
  std::map<std::vector<long long>, Frequency> entries;
};

// For each tuple h in hs, runs u2_inverse on x -> Delta_{q h} (T_u F)(q x)
// and stores (beta, correlation). Zero derivatives are stored with
// beta = 0, correlation = 0.
PhaseTable phase_map(const Signal& F, long long q, long long u, int m,
                     const std::vector<std::vector<long long>>& hs, int grid_factor = 4);

// box_m(H): all 2m-tuples k = (k_{10},..,k_{m0},k_{11},..,k_{m1}) whose
// 2^m mixed selections (k_{1 i_1},..,k_{m i_m}) all lie in H.
struct CubeSet {
  int m = 1;
  std::vector<std::vector<long long>> base;
  std::vector<std::vector<long long>> cubes;
};

CubeSet cube_set(const std::vector<std::vector<long long>>& H);

// psi(k) = sum_{omega in {0,1}^m} (-1)^{|omega|} phi(k_{1 omega_1},..,
// k_{m omega_m}), reduced to [0, 1). Missing vertices are rejected.
double psi_combination(const PhaseTable& phi, const std::vector<long long>& k);

// E_{k in box_m(H)} |sum_x E_{y in [M]} Delta_{q(k1-k0)} T_u f0(qx-qy^2)
// * Delta_{q(k1-k0)} T_u f1(qx+y-qy^2) * e(psi(k) x)|^2.
double lemma63_average(const Signal& f0, const Signal& f1, const ProgressionInstance& inst,
                       long long u, int m, const std::vector<std::vector<long long>>& H,
                       const PhaseTable& phi);

struct RationalApprox {
  long long a = 0;  // numerator: alpha is close to a / (q^2 t), or a/b in decompose
  long long t = 1;  // denominator scale
  long long k = 0;
  double theta = 0.0;    // |theta| <= 1
  double achieved = 0.0;  // ||q^2 t alpha|| (distance to the nearest integer)
};

// Exhaustive argmin over t in [1, Tmax] of ||q^2 t alpha||, smallest t on
// ties. target_eps is recorded by callers only; the minimum always exists.
RationalApprox find_denominator(double alpha, long long q, long long Tmax,
                                double target_eps = 0.0);

// k = floor(beta / step), theta = (beta - k*step)/step with beta =
// alpha - a/b and step = gamma / C; reconstruction
// alpha = a/b + k*step + theta*step holds to 1e-12.
RationalApprox decompose(double alpha, const Rational& ab, double gamma, double C);

enum class ExponentMode { kPaper, kDerived };

struct Lemma64Report {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// lhs = sum_{h in Z^m} |sum_x Delta_{qh} f(qx) e(sum_i phi_i(h) x)|^2,
// rhs = W^e ||f(q.)||_{U^{m+1}}^2 with W the subsampled width and
// e = m(1-2^{-m}) in paper mode, (m+2)(1-2^{-m}) in derived mode. Each
// phi_i must be independent of coordinate i (validated on the h-grid).
Lemma64Report lemma64_check(const Signal& f, long long q, int m,
                            const std::vector<std::function<double(const std::vector<long long>&)>>& phis,
                            ExponentMode mode);

struct DegreeThresholds {
  double gamma = 0.5;     // H membership: correlation^2 >= gamma * W^2
  long long tmax = 20;    // find_denominator range
  double dec_gamma = 0.1;  // decompose step numerator
  double dec_c = 1.0;      // decompose step denominator
};

struct DegreeReport {
  long long W = 0;         // width of the subsampled dual function
  double u3_mass = 0.0;    // ||F||_{U^3(u+qZ)}^8
  double u2_mass = 0.0;    // ||F||_{U^2(u+qZ)}^4
  PhaseTable phases;
  std::vector<long long> H;
  long long cube_count = 0;
  std::map<std::array<long long, 3>, long long> histogram;  // (a, t, k) -> count
  std::array<long long, 3> best_fiber{0, 0, 0};
  long long fiber_size = 0;
  std::vector<long long> H3;       // k0-projection of the largest fiber
  double fiber_lhs = 0.0;          // restricted phase-sum mass over H3 at phi1 = a/(q^2 t)
};

// The s = 3 degree-lowering pipeline on F = dual_function(f0, f1): U^3
// mass, per-h phase table, H, box_1(H), per-cube denominator pigeonholing,
// the largest (a, t, k) fiber, and the final U^2 mass. Empty intermediate
// sets are reported, not raised.
DegreeReport degree_lower_report(const Signal& f0, const Signal& f1,
                                 const ProgressionInstance& inst, long long u,
                                 const DegreeThresholds& thresholds = {});

}  // namespace unif

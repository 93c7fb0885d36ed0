#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unif/degree.hpp"
#include "unif/prng.hpp"

#include <cmath>
#include <numbers>

using namespace unif;

TEST_CASE("phase map on a quadratic phase") {
  const long long N = 64;
  const double theta = 0.1375;
  CArray v(N);
  for (long long x = 1; x <= N; ++x) {
    double ang = 2.0 * std::numbers::pi * theta * static_cast<double>(x) * static_cast<double>(x);
    v[x - 1] = Complex(std::cos(ang), std::sin(ang));
  }
  Signal F(1, std::move(v), false);
  std::vector<std::vector<long long>> hs;
  for (long long h = 1; h <= 6; ++h) hs.push_back({h});
  PhaseTable table = phase_map(F, 1, 0, 1, hs);
  for (long long h = 1; h <= 6; ++h) {
    const Frequency& fr = table.entries.at({h});
    // Delta_h F has pure frequency 2*theta*h, so the stored phase is
    // phi(h) = -2*theta*h mod 1.
    double want = -2.0 * theta * static_cast<double>(h);
    want -= std::floor(want);
    double d = std::abs(fr.beta - want);
    d = std::min(d, 1.0 - d);
    CHECK(d < 1e-6);
    CHECK(fr.correlation > 0.999 * static_cast<double>(N - h));
  }
}

TEST_CASE("phase map of an indicator is the zero phase") {
  PhaseTable table = phase_map(Signal::indicator(1, 32), 1, 0, 1, {{1}, {2}, {3}});
  for (const auto& [h, fr] : table.entries) {
    double d = std::min(fr.beta, 1.0 - fr.beta);
    CHECK(d < 1e-9);
  }
}

TEST_CASE("cube sets") {
  CubeSet sq = cube_set({{1}, {2}});
  CHECK(sq.cubes.size() == 4);
  CHECK(sq.cubes[0].size() == 2);

  CubeSet single = cube_set({{1, 1}});
  REQUIRE(single.cubes.size() == 1);
  CHECK(single.cubes[0] == std::vector<long long>{1, 1, 1, 1});

  // |cubes| >= |H|^4 / W^{m(2^m - 2m)} for m = 2 (here the exponent is 0,
  // so the floor is |H|^2 from pairing each tuple with itself); spot-check
  // against exhaustive recount.
  SplitMix64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::vector<long long>> H;
    for (int i = 0; i < 12; ++i) H.push_back({rng.next_range(0, 4), rng.next_range(0, 4)});
    std::sort(H.begin(), H.end());
    H.erase(std::unique(H.begin(), H.end()), H.end());
    CubeSet cs = cube_set(H);
    long long direct = 0;
    for (const auto& a : H)
      for (const auto& b : H) {
        bool ok = true;
        for (const auto& mix : {std::vector<long long>{a[0], b[1]}, std::vector<long long>{b[0], a[1]}})
          ok = ok && std::find(H.begin(), H.end(), mix) != H.end();
        if (ok) ++direct;
      }
    CHECK(static_cast<long long>(cs.cubes.size()) == direct);
    CHECK(static_cast<long long>(cs.cubes.size()) >= static_cast<long long>(H.size()));
  }
}

TEST_CASE("psi combination") {
  PhaseTable phi;
  phi.entries[{1}] = Frequency{0.3, 1.0};
  phi.entries[{2}] = Frequency{0.7, 1.0};
  CHECK(psi_combination(phi, {1, 1}) == doctest::Approx(0.0));
  CHECK(psi_combination(phi, {1, 2}) == doctest::Approx(0.6));  // 0.3 - 0.7 mod 1
  CHECK_THROWS_AS(psi_combination(phi, {1, 3}), std::invalid_argument);

  SplitMix64 rng(2);
  PhaseTable phi2;
  for (long long a = 0; a < 3; ++a)
    for (long long b = 0; b < 3; ++b) phi2.entries[{a, b}] = Frequency{rng.next_unit(), 1.0};
  for (int trial = 0; trial < 20; ++trial) {
    long long k10 = rng.next_range(0, 2), k20 = rng.next_range(0, 2);
    long long k11 = rng.next_range(0, 2), k21 = rng.next_range(0, 2);
    double direct = phi2.entries[{k10, k20}].beta - phi2.entries[{k10, k21}].beta -
                    phi2.entries[{k11, k20}].beta + phi2.entries[{k11, k21}].beta;
    direct -= std::floor(direct);
    double got = psi_combination(phi2, {k10, k20, k11, k21});
    double d = std::abs(got - direct);
    CHECK(std::min(d, 1.0 - d) < 1e-12);
  }
  // Diagonal cubes vanish; constants cancel.
  CHECK(psi_combination(phi2, {1, 2, 1, 2}) == doctest::Approx(0.0));
  PhaseTable shifted = phi2;
  for (auto& [k, fr] : shifted.entries) fr.beta += 0.25;
  double a = psi_combination(phi2, {0, 1, 2, 0});
  double b = psi_combination(shifted, {0, 1, 2, 0});
  double d = std::abs(a - b);
  CHECK(std::min(d, 1.0 - d) < 1e-9);
}

TEST_CASE("lemma63 average") {
  ProgressionInstance inst = ProgressionInstance::make(64, 1);
  Signal zero;
  PhaseTable phi;
  for (long long h = 1; h <= 4; ++h) phi.entries[{h}] = Frequency{0.0, 0.0};
  std::vector<std::vector<long long>> H{{1}, {2}, {3}, {4}};
  CHECK(lemma63_average(zero, Signal::indicator(1, 64), inst, 0, 1, H, phi) == 0.0);

  Signal one = Signal::indicator(1, 64);
  double base = lemma63_average(one, one, inst, 0, 1, H, phi);
  CHECK(base > 0.0);
  PhaseTable shifted = phi;
  for (auto& [k, fr] : shifted.entries) fr.beta = 0.37;  // constant phi, same psi
  CHECK(lemma63_average(one, one, inst, 0, 1, H, shifted) == doctest::Approx(base));
}

TEST_CASE("find denominator worked examples and exhaustive cross-check") {
  CHECK(find_denominator(0.25, 1, 10).t == 4);
  CHECK(find_denominator(0.25, 1, 10).achieved == doctest::Approx(0.0));
  CHECK(find_denominator(0.2499, 1, 10).t == 4);
  CHECK(find_denominator(0.2499, 1, 10).achieved == doctest::Approx(0.0004));
  CHECK(find_denominator(std::sqrt(2.0) - 1.0, 1, 10).t == 5);

  SplitMix64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    double alpha = rng.next_unit();
    long long q = rng.next_range(1, 3);
    long long Tmax = rng.next_range(1, 50);
    RationalApprox got = find_denominator(alpha, q, Tmax);
    // Reverse-order scan with >= keeps the smallest argmin.
    long long best_t = Tmax;
    double best = 1.0;
    for (long long t = Tmax; t >= 1; --t) {
      double v = static_cast<double>(q * q * t) * alpha;
      double dist = std::abs(v - std::llround(v));
      if (dist <= best) {
        best = dist;
        best_t = t;
      }
    }
    CHECK(got.t == best_t);
    CHECK(got.achieved == doctest::Approx(best));
  }
}

TEST_CASE("decompose reconstruction") {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    double alpha = rng.next_unit();
    Rational ab(rng.next_range(0, 7), rng.next_range(1, 9));
    double gamma = 0.01 + rng.next_unit();
    double C = 1.0 + rng.next_unit() * 4.0;
    RationalApprox d = decompose(alpha, ab, gamma, C);
    CHECK(std::abs(d.theta) <= 1.0);
    double rebuilt = ab.value() + (static_cast<double>(d.k) + d.theta) * (gamma / C);
    CHECK(std::abs(alpha - rebuilt) < 1e-12);
  }
}

TEST_CASE("lemma64 on the width-8 indicator") {
  std::vector<std::function<double(const std::vector<long long>&)>> zero{
      [](const std::vector<long long>&) { return 0.0; }};
  Signal f = Signal::indicator(1, 8);
  Lemma64Report paper = lemma64_check(f, 1, 1, zero, ExponentMode::kPaper);
  CHECK(paper.lhs == doctest::Approx(344.0));
  CHECK(paper.rhs == doctest::Approx(std::sqrt(8.0) * std::sqrt(344.0)));
  CHECK(!paper.holds);
  Lemma64Report derived = lemma64_check(f, 1, 1, zero, ExponentMode::kDerived);
  CHECK(derived.rhs == doctest::Approx(std::pow(8.0, 1.5) * std::sqrt(344.0)));
  CHECK(derived.holds);
}

TEST_CASE("lemma64 derived mode on random data") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int m = static_cast<int>(rng.next_range(1, 2));
    long long w = rng.next_range(2, 16);
    CArray v(w);
    for (long long i = 0; i < w; ++i) v[i] = rng.next_below(2) ? 1.0 : -1.0;
    Signal f(1, std::move(v), true);
    std::vector<std::function<double(const std::vector<long long>&)>> phis;
    for (int i = 0; i < m; ++i)
      phis.push_back([c = rng.next_unit()](const std::vector<long long>&) { return c; });
    CHECK(lemma64_check(f, 1, m, phis, ExponentMode::kDerived).holds);
  }
  // A phi that reads its own coordinate is rejected.
  std::vector<std::function<double(const std::vector<long long>&)>> bad{
      [](const std::vector<long long>& h) { return 0.1 * static_cast<double>(h[0]); }};
  CHECK_THROWS_AS(lemma64_check(Signal::indicator(1, 4), 1, 1, bad, ExponentMode::kDerived),
                  std::invalid_argument);
}

TEST_CASE("degree lowering pipeline") {
  ProgressionInstance inst = ProgressionInstance::make(100, 1);
  Signal one = Signal::indicator(1, 100);
  DegreeThresholds th;
  th.gamma = 1e-4;
  DegreeReport rep = degree_lower_report(one, one, inst, 1, th);
  CHECK(rep.u3_mass > 0.0);
  CHECK(rep.u2_mass > 0.0);
  CHECK(!rep.H.empty());
  CHECK(rep.cube_count == static_cast<long long>(rep.H.size() * rep.H.size()));
  CHECK(rep.fiber_size > 0);
  CHECK(rep.fiber_lhs > 0.0);
  CHECK(rep.best_fiber[1] >= 1);

  DegreeReport empty = degree_lower_report(Signal(), one, inst, 1, th);
  CHECK(empty.u3_mass == 0.0);
  CHECK(empty.H.empty());
}

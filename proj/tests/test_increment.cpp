#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unif/increment.hpp"
#include "unif/io.hpp"
#include "unif/prng.hpp"

#include <cmath>
#include <set>

using namespace unif;

TEST_CASE("rescale set") {
  std::vector<long long> evens;
  for (long long x = 2; x <= 20; x += 2) evens.push_back(x);
  CHECK(rescale_set(evens, 0, 2, 10) == std::vector<long long>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(rescale_set({1, 2, 3, 4, 5}, 0, 1, 3) == std::vector<long long>{1, 2, 3});

  SplitMix64 rng(1);
  std::vector<long long> A;
  for (long long x = 1; x <= 200; ++x)
    if (rng.next_unit() < 0.4) A.push_back(x);
  std::vector<long long> Ap = rescale_set(A, 7, 3, 50);
  std::set<long long> mem(A.begin(), A.end()), memp(Ap.begin(), Ap.end());
  for (long long n = 1; n <= 50; ++n) CHECK(memp.count(n) == mem.count(7 + 3 * n));
}

TEST_CASE("full set gives density one") {
  std::vector<long long> A;
  for (long long x = 1; x <= 400; ++x) A.push_back(x);
  ProgressionInstance inst = ProgressionInstance::make(400, 1);
  IncrementResult res = find_increment(A, inst, 3, 5, inst.M);
  CHECK(res.step.alpha_new == Rational(1, 1));
  CHECK(res.step.qprime == 1);  // tie-break picks the smallest geometry
  CHECK(res.step.Nprime == 5);
  CHECK(res.step.a == 0);
}

TEST_CASE("sliding window cross-check at qprime_max 1") {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    long long N = rng.next_range(100, 400);
    std::vector<long long> A;
    for (long long x = 1; x <= N; ++x)
      if (rng.next_unit() < 0.35) A.push_back(x);
    ProgressionInstance inst = ProgressionInstance::make(N, 1);
    long long Np = rng.next_range(5, inst.M);
    IncrementResult res = find_increment(A, inst, 1, Np, Np);
    std::set<long long> mem(A.begin(), A.end());
    long long best = -1;
    for (long long a = 0; a + Np <= N; ++a) {
      long long c = 0;
      for (long long n = 1; n <= Np; ++n) c += mem.count(a + n);
      best = std::max(best, c);
    }
    CHECK(res.step.alpha_new == Rational(best, Np));
  }
}

TEST_CASE("planted window is recovered") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    long long qp = rng.next_range(2, 4);
    long long Np = rng.next_range(60, 90);
    long long a = rng.next_range(0, 2000 - 4 * Np - 1);
    double ain = 0.9;
    auto A = planted_increment_set(2000, 1, qp, a, Np, ain, 0.3, rng.next());
    ProgressionInstance inst = ProgressionInstance::make(2000, 1);
    IncrementResult res = find_increment(A, inst, 6, 10, inst.M);
    double need = ain - 3.0 * std::sqrt(ain / static_cast<double>(res.step.Nprime));
    CHECK(res.step.alpha_new.value() >= need);
  }
}

TEST_CASE("iteration stops on a planted progression with a valid witness") {
  std::vector<long long> A{3, 5, 7};  // 3, 3+2, 3+2^2 with q = 1
  IterateParams params;
  IncrementTrace trace = iterate_increment(A, 20, 1, params);
  CHECK(trace.status == IterateStatus::kProgressionFound);
  CHECK(trace.witness.x == 3);
  CHECK(trace.witness.y == 2);
  CHECK(trace.steps.empty());
}

TEST_CASE("iteration trace on greedy free sets") {
  ProgressionInstance small = ProgressionInstance::make(9, 1);
  IterateParams params;
  params.floor_N = 5;
  params.qprime_max = 2;
  params.nprime_min = 2;
  IncrementTrace trace = iterate_increment(greedy_free_set(small), 9, 1, params);
  CHECK(trace.status != IterateStatus::kProgressionFound);

  ProgressionInstance big = ProgressionInstance::make(10000, 1);
  std::vector<long long> A = greedy_free_set(big);
  IterateParams p2;
  p2.qprime_max = 6;
  IncrementTrace t2 = iterate_increment(A, 10000, 1, p2);
  CHECK(t2.status != IterateStatus::kProgressionFound);
  long long q_expect = 1;
  std::vector<long long> cur = A;
  for (const IncrementStep& s : t2.steps) {
    CHECK(s.q == q_expect);
    CHECK(s.alpha_new.value() >= s.alpha.value());
    // alpha_new recount through an independent rescale.
    auto win = rescale_set(cur, s.a, s.q * s.qprime, s.Nprime);
    CHECK(Rational(static_cast<long long>(win.size()), s.Nprime) == s.alpha_new);
    cur = win;
    q_expect = s.q * s.q * s.qprime;
  }
}

TEST_CASE("progression-freeness transport along the iteration") {
  SplitMix64 rng(4);
  for (long long N : {500, 2000}) {
    ProgressionInstance inst = ProgressionInstance::make(N, 1);
    std::vector<long long> A = greedy_free_set(inst);
    REQUIRE(enumerate_progressions(A, inst).empty());
    IncrementResult res = find_increment(A, inst, 4, 8, inst.M);
    auto Ap = rescale_set(A, res.step.a, res.step.qprime, res.step.Nprime);
    long long q_new = res.step.qprime;  // q = 1: q^2 q' = q'
    if (q_new <= res.step.Nprime) {
      ProgressionInstance inst2 = ProgressionInstance::make(res.step.Nprime, q_new);
      CHECK(enumerate_progressions(Ap, inst2).empty());
    }
  }
}

TEST_CASE("trace csv shape") {
  IncrementTrace trace;
  trace.status = IterateStatus::kNTooSmall;
  trace.final_N = 10;
  trace.final_q = 4;
  trace.final_alpha = Rational(7, 10);
  IncrementStep s;
  s.i = 0;
  s.N = 1000;
  s.q = 1;
  s.alpha = Rational(23, 100);
  s.qprime = 4;
  s.a = 429;
  s.Nprime = 10;
  s.alpha_new = Rational(7, 10);
  trace.steps.push_back(s);
  std::string csv = trace_csv(trace);
  CHECK(csv == "i,N_i,q_i,alpha_i,qprime,a,Nprime,alpha_new,status\n"
               "0,1000,1,23/100,4,429,10,7/10,\n"
               "1,10,4,7/10,,,,,N_too_small\n");
}

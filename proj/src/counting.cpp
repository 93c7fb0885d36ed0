#include "unif/counting.hpp"

#include "unif/parallel.hpp"
#include "unif/prng.hpp"

#include <algorithm>
#include <stdexcept>

namespace unif {

ProgressionInstance ProgressionInstance::make(long long N, long long q) {
  Params p = Params::make(N, q);
  if (p.M < 1) throw std::invalid_argument("ProgressionInstance: M = 0");
  return ProgressionInstance{p.N, p.q, p.M};
}

Complex lambda(const Signal& f0, const Signal& f1, const Signal& f2, const ProgressionInstance& inst) {
  if (f0.empty() || f1.empty() || f2.empty()) return Complex(0.0, 0.0);

  struct Acc {
    Complex v{0.0, 0.0};
    Acc& operator+=(const Acc& o) {
      v += o.v;
      return *this;
    }
  };
  const long long q = inst.q;
  Acc total = parallel_reduce<Acc>(1, inst.M + 1, [&](long long ylo, long long yhi) {
    std::vector<Complex> terms;
    for (long long y = ylo; y < yhi; ++y) {
      const long long qy2 = q * y * y;
      long long xlo = std::max({f0.lo(), f1.lo() - y, f2.lo() - qy2});
      long long xhi = std::min({f0.hi(), f1.hi() - y, f2.hi() - qy2});
      Complex inner(0.0, 0.0);
      for (long long x = xlo; x <= xhi; ++x) inner += f0.at(x) * f1.at(x + y) * f2.at(x + qy2);
      terms.push_back(inner);
    }
    return Acc{pairwise_sum(terms)};
  });
  return total.v;
}

std::vector<ProgressionWitness> enumerate_progressions(const std::vector<long long>& A,
                                                       const ProgressionInstance& inst) {
  std::vector<char> member(static_cast<std::size_t>(inst.N + 1), 0);
  for (long long a : A) {
    if (a < 1 || a > inst.N) throw std::invalid_argument("enumerate_progressions: A must lie in [N]");
    member[static_cast<std::size_t>(a)] = 1;
  }
  std::vector<ProgressionWitness> out;
  for (long long x : A) {
    for (long long y = 1; y <= inst.M; ++y) {
      long long b = x + y;
      long long c = x + inst.q * y * y;
      if (b > inst.N || c > inst.N) continue;
      if (member[static_cast<std::size_t>(b)] && member[static_cast<std::size_t>(c)])
        out.push_back({x, y});
    }
  }
  std::sort(out.begin(), out.end(), [](const ProgressionWitness& a, const ProgressionWitness& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  return out;
}

Signal dual_function(const Signal& f0, const Signal& f1, const ProgressionInstance& inst) {
  if (f0.empty() || f1.empty()) return Signal();
  const long long q = inst.q, M = inst.M;
  // x ranges over the union of supp(f0) + q*y^2 over y in [M].
  long long lo = f0.lo() + q;
  long long hi = f0.hi() + q * M * M;
  CArray acc = CArray::Zero(hi - lo + 1);
  for (long long y = 1; y <= M; ++y) {
    const long long qy2 = q * y * y;
    long long xlo = std::max({lo, f0.lo() + qy2, f1.lo() - y + qy2});
    long long xhi = std::min({hi, f0.hi() + qy2, f1.hi() - y + qy2});
    for (long long x = xlo; x <= xhi; ++x)
      acc[x - lo] += f0.at(x - qy2) * f1.at(x + y - qy2);
  }
  acc /= static_cast<double>(M);
  return Signal(lo, std::move(acc), false);
}

std::vector<long long> greedy_free_set(const ProgressionInstance& inst) {
  std::vector<char> member(static_cast<std::size_t>(inst.N + 1), 0);
  std::vector<long long> out;
  const long long q = inst.q;
  for (long long n = 1; n <= inst.N; ++n) {
    auto in_aug = [&](long long v) {
      return v == n || (v >= 1 && v <= inst.N && member[static_cast<std::size_t>(v)]);
    };
    bool ok = true;
    // Adding n creates a progression only if n plays one of the three roles.
    for (long long y = 1; y <= inst.M && ok; ++y) {
      const long long qy2 = q * y * y;
      if (in_aug(n + y) && in_aug(n + qy2)) ok = false;                            // n = x
      if (ok && in_aug(n - y) && in_aug(n - y + qy2)) ok = false;                  // n = x + y
      if (ok && in_aug(n - qy2) && in_aug(n - qy2 + y)) ok = false;                // n = x + q y^2
    }
    if (ok) {
      member[static_cast<std::size_t>(n)] = 1;
      out.push_back(n);
    }
  }
  return out;
}

std::vector<long long> planted_increment_set(long long N, long long q, long long qprime, long long a,
                                             long long Nprime, double alpha_in, double alpha_out,
                                             std::uint64_t seed) {
  if (a + q * qprime * Nprime > N) throw std::invalid_argument("planted_increment_set: progression exceeds [N]");
  if (!(0.0 <= alpha_out && alpha_out <= alpha_in && alpha_in <= 1.0))
    throw std::invalid_argument("planted_increment_set: need 0 <= alpha_out <= alpha_in <= 1");

  std::vector<char> planted(static_cast<std::size_t>(N + 1), 0);
  const long long step = q * qprime;
  for (long long j = 1; j <= Nprime; ++j) planted[static_cast<std::size_t>(a + step * j)] = 1;

  SplitMix64 rng(seed);
  std::vector<long long> out;
  for (long long n = 1; n <= N; ++n) {
    double p = planted[static_cast<std::size_t>(n)] ? alpha_in : alpha_out;
    if (rng.next_unit() < p) out.push_back(n);
  }
  return out;
}

}  // namespace unif

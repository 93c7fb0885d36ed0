#include "unif/increment.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace unif {

namespace {

// Candidate window lengths: ratio-2 geometric between lo and hi, always
// including hi, plus every length within +-25% of `around` when given.
std::vector<long long> nprime_grid(long long lo, long long hi, long long around) {
  std::set<long long> out;
  for (long long n = lo; n <= hi; n *= 2) out.insert(n);
  out.insert(hi);
  if (around > 0) {
    long long rlo = std::max(lo, around - around / 4);
    long long rhi = std::min(hi, around + around / 4);
    for (long long n = rlo; n <= rhi; ++n) out.insert(n);
  }
  return {out.begin(), out.end()};
}

struct Best {
  bool found = false;
  long long count = 0;
  long long nprime = 1;
  long long qprime = 1;
  long long a = 0;

  // density first, then smallest qprime, Nprime, a.
  bool better(long long c, long long np, long long qp, long long av) const {
    if (!found) return true;
    double lhs = static_cast<double>(c) * static_cast<double>(nprime);
    double rhs = static_cast<double>(count) * static_cast<double>(np);
    if (lhs != rhs) return lhs > rhs;
    if (qp != qprime) return qp < qprime;
    if (np != nprime) return np < nprime;
    return av < a;
  }
};

void scan_windows(const std::vector<char>& member, long long N, long long q, long long qprime,
                  const std::vector<long long>& nprimes, Best* best) {
  const long long s = q * qprime;
  for (long long r = 0; r < s; ++r) {
    // Positions r, r+s, ... inside [1, N]; window j covers a + s*[Nprime]
    // with a = pos[j] - s.
    std::vector<long long> pos;
    for (long long x = r == 0 ? s : r; x <= N; x += s) pos.push_back(x);
    if (pos.empty()) continue;
    std::vector<long long> pref(pos.size() + 1, 0);
    for (std::size_t j = 0; j < pos.size(); ++j)
      pref[j + 1] = pref[j] + (member[static_cast<std::size_t>(pos[j])] ? 1 : 0);
    for (long long np : nprimes) {
      if (np > static_cast<long long>(pos.size())) continue;
      for (std::size_t j = 0; j + static_cast<std::size_t>(np) <= pos.size(); ++j) {
        long long c = pref[j + static_cast<std::size_t>(np)] - pref[j];
        long long a = pos[j] - s;
        if (best->better(c, np, qprime, a)) {
          best->found = true;
          best->count = c;
          best->nprime = np;
          best->qprime = qprime;
          best->a = a;
        }
      }
    }
  }
}

}  // namespace

std::vector<long long> rescale_set(const std::vector<long long>& A, long long a, long long step,
                                   long long Nprime) {
  if (step < 1 || Nprime < 1) throw std::invalid_argument("rescale_set: step, Nprime must be positive");
  std::set<long long> members(A.begin(), A.end());
  std::vector<long long> out;
  for (long long n = 1; n <= Nprime; ++n)
    if (members.count(a + step * n)) out.push_back(n);
  return out;
}

IncrementResult find_increment(const std::vector<long long>& A, const ProgressionInstance& inst,
                               long long qprime_max, long long nprime_min, long long nprime_max) {
  const long long N = inst.N, q = inst.q;
  if (qprime_max < 1 || nprime_min < 1 || nprime_min > nprime_max)
    throw std::invalid_argument("find_increment: empty search space");
  if (q * nprime_min > N) throw std::invalid_argument("find_increment: empty search space");

  std::vector<char> member(static_cast<std::size_t>(N) + 1, 0);
  long long size = 0;
  for (long long x : A)
    if (x >= 1 && x <= N && !member[static_cast<std::size_t>(x)]) {
      member[static_cast<std::size_t>(x)] = 1;
      ++size;
    }

  IncrementResult res;
  const double alpha = static_cast<double>(size) / static_cast<double>(N);
  {
    CArray v(N);
    for (long long x = 1; x <= N; ++x)
      v[x - 1] = (member[static_cast<std::size_t>(x)] ? 1.0 : 0.0) - alpha;
    Signal fa(1, std::move(v), false);
    res.fourier_peak = fa.empty() ? Frequency{0.0, 0.0} : u2_inverse(fa, 4);
    res.denom_hint = find_denominator(res.fourier_peak.beta, q, std::max<long long>(1, qprime_max));
  }

  Best best;
  std::vector<long long> coarse = nprime_grid(nprime_min, nprime_max, 0);
  for (long long qp = 1; qp <= qprime_max; ++qp) scan_windows(member, N, q, qp, coarse, &best);
  if (!best.found) throw std::invalid_argument("find_increment: empty search space");
  std::vector<long long> fine = nprime_grid(nprime_min, nprime_max, best.nprime);
  for (long long qp = 1; qp <= qprime_max; ++qp) scan_windows(member, N, q, qp, fine, &best);

  res.step.N = N;
  res.step.q = q;
  res.step.alpha = Rational(size, N);
  res.step.qprime = best.qprime;
  res.step.a = best.a;
  res.step.Nprime = best.nprime;
  res.step.alpha_new = Rational(best.count, best.nprime);
  return res;
}

IncrementTrace iterate_increment(const std::vector<long long>& A, long long N, long long q0,
                                 const IterateParams& params) {
  IncrementTrace trace;
  std::vector<long long> cur = A;
  long long Ni = N, qi = q0;

  for (long long i = 0;; ++i) {
    if (qi > Ni) {  // M = 0: no configurations fit, nothing left to search
      trace.final_N = Ni;
      trace.final_q = qi;
      trace.final_alpha = Rational(static_cast<long long>(cur.size()), Ni);
      trace.status = IterateStatus::kNTooSmall;
      return trace;
    }
    ProgressionInstance inst = ProgressionInstance::make(Ni, qi);
    auto witnesses = enumerate_progressions(cur, inst);
    trace.final_N = Ni;
    trace.final_q = qi;
    trace.final_alpha = Rational(static_cast<long long>(cur.size()), Ni);
    if (!witnesses.empty()) {
      trace.status = IterateStatus::kProgressionFound;
      trace.witness = witnesses.front();
      return trace;
    }
    if (Ni < params.floor_N) {
      trace.status = IterateStatus::kNTooSmall;
      return trace;
    }
    if (static_cast<long long>(cur.size()) >= Ni) {
      trace.status = IterateStatus::kDensityCapped;
      return trace;
    }
    if (i >= params.max_steps) {
      trace.status = IterateStatus::kMaxSteps;
      return trace;
    }

    long long nmax = params.nprime_max > 0 ? std::min(params.nprime_max, inst.M) : inst.M;
    long long nmin = std::min(params.nprime_min, nmax);
    IncrementResult res = find_increment(cur, inst, params.qprime_max, nmin, nmax);
    res.step.i = i;
    trace.steps.push_back(res.step);

    cur = rescale_set(cur, res.step.a, qi * res.step.qprime, res.step.Nprime);
    Ni = res.step.Nprime;
    qi = qi * qi * res.step.qprime;
  }
}

}  // namespace unif

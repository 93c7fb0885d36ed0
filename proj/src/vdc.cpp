#include "unif/vdc.hpp"

#include "unif/parallel.hpp"
#include "unif/prng.hpp"

#include <cmath>
#include <stdexcept>

namespace unif {

TriangularWeight::TriangularWeight(Rational delta, long long M) : delta_(delta), m_(M) {
  if (M < 1) throw std::invalid_argument("TriangularWeight: M must be positive");
  if (delta.num <= 0 || delta.num > delta.den) throw std::invalid_argument("TriangularWeight: delta must lie in (0, 1]");
  h_ = delta.floor_times(M);
  if (h_ < 1) throw std::invalid_argument("TriangularWeight: floor(delta*M) = 0, degenerate weight");
  double d = delta.value();
  norm_ = 1.0 / (d * d * static_cast<double>(M));
}

Rational TriangularWeight::mass_exact() const {
  // H^2 / (delta^2 M) = H^2 den^2 / (num^2 M)
  return Rational(h_ * h_ * delta_.den * delta_.den, delta_.num * delta_.num * m_);
}

TriangularWeight mu(const Rational& delta, long long M) { return TriangularWeight(delta, M); }

VdcReport vdc_check(const Signal& g, long long M, long long H) {
  if (H <= 0 || H >= M) throw std::invalid_argument("vdc_check: need 0 < H < M");
  VdcReport rep;

  Complex s(0.0, 0.0);
  for (long long y = 1; y <= M; ++y) s += g.at(y);
  rep.lhs = std::norm(s);

  Complex corr(0.0, 0.0);
  for (long long h = -(H - 1); h <= H - 1; ++h) {
    long long r = H - (h < 0 ? -h : h);
    Complex inner(0.0, 0.0);
    long long ylo = std::max(1LL, 1 - h);
    long long yhi = std::min(M, M - h);
    for (long long y = ylo; y <= yhi; ++y) inner += g.at(y + h) * std::conj(g.at(y));
    corr += static_cast<double>(r) * inner;
  }
  rep.rhs = (static_cast<double>(M + H) / static_cast<double>(H * H)) * corr.real();
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-9) + 1e-9;
  return rep;
}

Params Params::make(long long N, long long q) {
  if (N < 1 || q < 1) throw std::invalid_argument("Params: N and q must be positive");
  if (q > N) throw std::invalid_argument("Params: q must not exceed N");
  Params p;
  p.N = N;
  p.q = q;
  long long ratio = N / q;
  long long m = static_cast<long long>(std::sqrt(static_cast<double>(ratio)));
  while (m * m > ratio) --m;
  while ((m + 1) * (m + 1) <= ratio) ++m;
  p.M = m;
  return p;
}

Complex weighted_box_pow(const Signal& f,
                         const std::vector<std::pair<long long, const TriangularWeight*>>& dirs) {
  if (f.empty()) return Complex(0.0, 0.0);
  if (dirs.empty()) return f.sum();

  auto [coef, w] = dirs.back();
  std::vector<std::pair<long long, const TriangularWeight*>> rest(dirs.begin(), dirs.end() - 1);
  std::vector<Complex> terms;
  const long long H = w->H();
  terms.reserve(static_cast<std::size_t>(2 * H - 1));
  for (long long h = -(H - 1); h <= H - 1; ++h) {
    Signal d = mult_derivative(f, coef * h);
    if (d.empty()) continue;
    terms.push_back(w->value(h) * weighted_box_pow(d, rest));
  }
  return pairwise_sum(terms);
}

BoxAvgResult triple_box_average_full(const Signal& f, const Params& params, const Rational& delta2,
                                     const Rational& delta3, BoxAvgMode mode, std::uint64_t seed,
                                     long long max_pairs) {
  const long long A = delta2.floor_times(params.M);
  if (A < 1) throw std::invalid_argument("triple_box_average: floor(delta2*M) = 0");
  TriangularWeight w = mu(delta3, params.M);

  const long long total_pairs = A * A;
  bool mc = mode == BoxAvgMode::kMonteCarlo ||
            (mode == BoxAvgMode::kAuto && params.M >= 64 && total_pairs > max_pairs);

  std::vector<std::pair<long long, long long>> pairs;
  if (mc) {
    SplitMix64 rng(seed);
    pairs.reserve(static_cast<std::size_t>(max_pairs));
    for (long long i = 0; i < max_pairs; ++i)
      pairs.emplace_back(rng.next_range(1, A), rng.next_range(1, A));
  } else {
    pairs.reserve(static_cast<std::size_t>(total_pairs));
    for (long long a = 1; a <= A; ++a)
      for (long long b = 1; b <= A; ++b) pairs.emplace_back(a, b);
  }

  struct Acc {
    double v = 0.0;
    Acc& operator+=(const Acc& o) {
      v += o.v;
      return *this;
    }
  };
  const long long q = params.q;
  Acc sum = parallel_reduce<Acc>(0, static_cast<long long>(pairs.size()), [&](long long lo, long long hi) {
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(hi - lo));
    for (long long i = lo; i < hi; ++i) {
      auto [a, b] = pairs[static_cast<std::size_t>(i)];
      Complex v = weighted_box_pow(f, {{2 * q * (a + b), &w}, {2 * q * b, &w}, {2 * q * a, &w}});
      vals.push_back(v.real());
    }
    return Acc{pairwise_sum(vals)};
  });

  BoxAvgResult out;
  out.pairs_evaluated = static_cast<long long>(pairs.size());
  out.monte_carlo = mc;
  out.value = sum.v / static_cast<double>(pairs.size());
  return out;
}

double triple_box_average(const Signal& f, const Params& params, const Rational& delta2,
                          const Rational& delta3) {
  return triple_box_average_full(f, params, delta2, delta3).value;
}

}  // namespace unif

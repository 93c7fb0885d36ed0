#include "unif/gowers.hpp"

#include "unif/fft.hpp"
#include "unif/parallel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace unif {

namespace {

struct ComplexAcc {
  Complex v{0.0, 0.0};
  ComplexAcc& operator+=(const ComplexAcc& o) {
    v += o.v;
    return *this;
  }
};

Complex u2_pow(const Signal& f) {
  if (f.empty()) return Complex(0.0, 0.0);
  std::vector<Complex> v(f.values().data(), f.values().data() + f.values().size());
  std::vector<Complex> ac = autocorrelation(v);
  if (f.exact_integer()) {
    // Autocorrelation values of a {0,±1} signal are integers; round away
    // the FFT noise and accumulate exactly.
    long long total = 0;
    for (const Complex& c : ac) {
      long long r = std::llround(c.real());
      total += r * r;
    }
    return Complex(static_cast<double>(total), 0.0);
  }
  std::vector<Complex> sq(ac.size());
  for (std::size_t i = 0; i < ac.size(); ++i) sq[i] = Complex(std::norm(ac[i]), 0.0);
  return pairwise_sum(sq);
}

}  // namespace

BoxSpec BoxSpec::progressions(const std::vector<std::pair<long long, long long>>& step_len) {
  BoxSpec spec;
  for (auto [step, len] : step_len) {
    if (step == 0) throw std::invalid_argument("BoxSpec: zero step");
    if (len < 1) throw std::invalid_argument("BoxSpec: empty direction");
    std::vector<long long> q(len);
    for (long long j = 1; j <= len; ++j) q[j - 1] = step * j;
    spec.directions.push_back(std::move(q));
  }
  return spec;
}

Complex u_norm_pow(const Signal& f, int s) {
  if (s < 1) throw std::invalid_argument("u_norm_pow: s must be >= 1");
  if (f.empty()) return Complex(0.0, 0.0);
  if (s == 1) {
    Complex t = f.sum();
    return Complex(std::norm(t), 0.0);
  }
  if (s == 2) return u2_pow(f);
  const long long w = f.width();
  ComplexAcc total = parallel_reduce<ComplexAcc>(-(w - 1), w, [&](long long lo, long long hi) {
    ComplexAcc acc;
    std::vector<Complex> terms;
    terms.reserve(static_cast<std::size_t>(hi - lo));
    for (long long h = lo; h < hi; ++h) {
      Signal d = mult_derivative(f, h);
      if (!d.empty()) terms.push_back(u_norm_pow(d, s - 1));
    }
    acc.v = pairwise_sum(terms);
    return acc;
  });
  return total.v;
}

double u_norm_local_pow(const Signal& f, int s, long long u, long long q) {
  if (u < 1 || u > q) throw std::invalid_argument("u_norm_local_pow: u must lie in [1, q]");
  return u_norm_pow(subsample(f, u, q), s).real();
}

Complex box_norm_pow(const Signal& f, const BoxSpec& spec) {
  if (spec.directions.empty()) throw std::invalid_argument("box_norm_pow: no directions");
  for (const auto& q : spec.directions)
    if (q.empty()) throw std::invalid_argument("box_norm_pow: empty direction set");

  // Recursion over the last direction:
  //   ||f||^{2^d} = sum_{h,h' in Q_d} ||asym_derivative(f,h,h')||^{2^{d-1}}
  // with base case d = 0 reading sum_x f(x).
  struct Rec {
    const std::vector<std::vector<long long>>& dirs;
    Complex run(const Signal& g, std::size_t d) const {
      if (g.empty()) return Complex(0.0, 0.0);
      if (d == 0) return g.sum();
      const auto& q = dirs[d - 1];
      std::vector<Complex> terms;
      terms.reserve(q.size() * q.size());
      for (long long h : q)
        for (long long hp : q) terms.push_back(run(asym_derivative(g, h, hp), d - 1));
      return pairwise_sum(terms);
    }
  };
  return Rec{spec.directions}.run(f, spec.directions.size());
}

Complex gowers_inner(const std::vector<Signal>& fs, int s) {
  if (s < 1) throw std::invalid_argument("gowers_inner: s must be >= 1");
  if (fs.size() != (std::size_t{1} << s)) throw std::invalid_argument("gowers_inner: needs exactly 2^s signals");
  for (const Signal& f : fs)
    if (f.empty()) return Complex(0.0, 0.0);

  // Recursion peeling the last differencing direction: pairing
  // g_{w'}(x) = f_{(w',0)}(x) * conj(f_{(w',1)}(x + h_s)) reduces
  // [f_w]_{U^s} to sum_{h_s} [g_{w'}]_{U^{s-1}}, with the scalar base
  // [f_0, f_1]_{U^1}-style product sum at s = 0 replaced by
  // [f]_{U^1} handled via s = 1: sum_{x,h} f_0(x) conj f_1(x+h)
  // = (sum f_0) * conj(sum f_1).
  if (s == 1) return fs[0].sum() * std::conj(fs[1].sum());

  // h_s range: union over the (f_{(w',0)}, f_{(w',1)}) pairs of the shifts
  // for which the two supports overlap; outside it every term vanishes.
  const std::size_t half = fs.size() / 2;
  long long hlo = 0, hhi = -1;
  for (std::size_t w = 0; w < half; ++w) {
    long long plo = fs[w + half].lo() - fs[w].hi();
    long long phi = fs[w + half].hi() - fs[w].lo();
    if (hhi < hlo) {
      hlo = plo;
      hhi = phi;
    } else {
      hlo = std::min(hlo, plo);
      hhi = std::max(hhi, phi);
    }
  }
  std::vector<Complex> terms;
  for (long long h = hlo; h <= hhi; ++h) {
    std::vector<Signal> gs(half);
    bool dead = false;
    for (std::size_t w = 0; w < half; ++w) {
      // bit s-1 selects the partner; conjugate-shift it.
      Signal partner = shift(fs[w + half], h);
      gs[w] = pointwise_product(fs[w], Signal(partner.offset(), partner.values().conjugate().eval(),
                                              partner.exact_integer()));
      if (gs[w].empty()) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    terms.push_back(gowers_inner(gs, s - 1));
  }
  return pairwise_sum(terms);
}

GcsReport gcs_check(const std::vector<Signal>& fs, int s) {
  GcsReport rep;
  rep.lhs = std::abs(gowers_inner(fs, s));
  double rhs = 1.0;
  const double inv = 1.0 / static_cast<double>(std::size_t{1} << s);
  for (const Signal& f : fs) {
    double p = std::max(0.0, u_norm_pow(f, s).real());
    rhs *= std::pow(p, inv);
  }
  rep.rhs = rhs;
  rep.holds = rep.lhs <= rhs * (1.0 + 1e-9) + 1e-12;
  return rep;
}

double phase_correlation(const Signal& f, double beta) {
  if (f.empty()) return 0.0;
  Complex acc(0.0, 0.0);
  const double tau = 2.0 * std::numbers::pi * beta;
  for (long long x = f.lo(); x <= f.hi(); ++x) {
    double ang = tau * static_cast<double>(x - f.lo());
    acc += f.at(x) * Complex(std::cos(ang), std::sin(ang));
  }
  return std::abs(acc);
}

Frequency u2_inverse(const Signal& f, int grid_factor) {
  if (f.empty()) throw std::invalid_argument("u2_inverse: zero signal");
  if (grid_factor < 4) throw std::invalid_argument("u2_inverse: grid_factor must be >= 4");

  const std::size_t w = static_cast<std::size_t>(f.width());
  const std::size_t grid = next_pow2(static_cast<std::size_t>(grid_factor) * w);

  // sum_x f(x) e(beta x) with beta = k/grid equals conj(FFT(conj(f)))[k]
  // up to a unimodular offset factor, so the magnitudes come from one FFT.
  std::vector<Complex> buf(grid, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < w; ++i) buf[i] = std::conj(f.values()[static_cast<Eigen::Index>(i)]);
  fft_pow2(buf, false);

  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t k = 0; k < grid; ++k) {
    double m = std::abs(buf[k]);
    if (m > best_mag) {  // strict: ties keep the smallest grid index
      best_mag = m;
      best = k;
    }
  }

  // Ternary refinement of |S(beta)| around the winning grid point.
  const double step = 1.0 / static_cast<double>(grid);
  double lo = static_cast<double>(best) * step - step;
  double hi = static_cast<double>(best) * step + step;
  while (hi - lo > 1e-12) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    if (phase_correlation(f, m1) < phase_correlation(f, m2))
      lo = m1;
    else
      hi = m2;
  }
  double beta = 0.5 * (lo + hi);
  beta -= std::floor(beta);
  double refined = phase_correlation(f, beta);

  Frequency out;
  if (refined > best_mag) {
    out.beta = beta;
    out.correlation = refined;
  } else {
    out.beta = static_cast<double>(best) * step;
    out.correlation = best_mag;
  }
  return out;
}

}  // namespace unif

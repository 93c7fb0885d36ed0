#include "unif/concat.hpp"

#include "unif/fft.hpp"
#include "unif/gowers.hpp"
#include "unif/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace unif {

namespace {

constexpr int kMaxPivots = 24;

Complex unit_phase(double turns) {
  double ang = 2.0 * std::numbers::pi * turns;
  return Complex(std::cos(ang), std::sin(ang));
}

long long mod_inverse(long long a, long long m) {
  // extended Euclid; gcd(a, m) = 1 assumed
  long long t = 0, newt = 1, r = m, newr = ((a % m) + m) % m;
  while (newr != 0) {
    long long quot = r / newr;
    t -= quot * newt;
    std::swap(t, newt);
    r -= quot * newr;
    std::swap(r, newr);
  }
  return ((t % m) + m) % m;
}

// Factorization data for one coprime residue class: l(x) = Ltab[g(x)-ymin],
// r(x) = Rtab[h(x)-1], with x = c*g(x) + d*h(x), h(x) in [c].
struct CoprimeFactor {
  Complex corr{0.0, 0.0};  // signed sum f l r
  std::vector<Complex> ltab;
  long long ymin = 0;
  std::vector<Complex> rtab;  // indexed z-1, z in [c]
  double gamma = 0.0;
  double gamma_prime = 0.0;
};

struct CellIndex {
  long long z = 1;  // in [c]
  long long y = 0;
};

CellIndex cell_of(long long x, long long c, long long d, long long dinv) {
  long long z = (dinv * (((x % c) + c) % c)) % c;
  if (z == 0) z = c;
  return {z, (x - d * z) / c};
}

CoprimeFactor solve_coprime(const Signal& f, long long c, long long d, int grid_factor) {
  CoprimeFactor out;
  if (f.empty()) return out;

  const long long dinv = c == 1 ? 0 : mod_inverse(d, c);
  long long ymin = 0, ymax = -1;
  for (long long x = f.lo(); x <= f.hi(); ++x) {
    long long y = cell_of(x, c, d, dinv).y;
    if (ymax < ymin) {
      ymin = ymax = y;
    } else {
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  const long long yw = ymax - ymin + 1;
  const double scale = std::max(1.0, f.sup_norm());

  // F(y, z) = f(cy + dz) over the covering grid.
  std::vector<Complex> F(static_cast<std::size_t>(yw * c), Complex(0.0, 0.0));
  auto fat = [&](long long y, long long z) -> Complex& {
    return F[static_cast<std::size_t>((y - ymin) * c + (z - 1))];
  };
  std::vector<std::pair<long long, long long>> cells;  // nonzero (y, z)
  for (long long y = ymin; y <= ymax; ++y)
    for (long long z = 1; z <= c; ++z) {
      Complex v = f.at(c * y + d * z);
      fat(y, z) = v;
      if (v != Complex(0.0, 0.0)) cells.emplace_back(y, z);
    }
  if (cells.empty()) return out;

  const std::size_t stride = std::max<std::size_t>(1, cells.size() / kMaxPivots);
  const long long gz = static_cast<long long>(grid_factor) * c;
  const std::size_t p = next_pow2(static_cast<std::size_t>(grid_factor) * static_cast<std::size_t>(yw));

  double best_mag = -1.0;
  std::pair<long long, long long> best_cell = cells[0];
  double best_gamma = 0.0, best_gp = 0.0;

  std::vector<Complex> a(static_cast<std::size_t>(yw));
  std::vector<Complex> buf;
  for (std::size_t ci = 0; ci < cells.size(); ci += stride) {
    auto [yp, zp] = cells[ci];
    const double pivot_mag = std::abs(fat(yp, zp));
    for (long long kz = 0; kz < gz; ++kz) {
      const double gp = static_cast<double>(kz) / static_cast<double>(gz);
      for (long long y = ymin; y <= ymax; ++y) {
        Complex s(0.0, 0.0);
        for (long long z = 1; z <= c; ++z)
          s += fat(y, z) * std::conj(fat(y, zp)) * std::conj(fat(yp, z)) * unit_phase(-gp * static_cast<double>(z));
        a[static_cast<std::size_t>(y - ymin)] = s;
      }
      buf.assign(p, Complex(0.0, 0.0));
      std::copy(a.begin(), a.end(), buf.begin());
      fft_pow2(buf, false);
      for (std::size_t k = 0; k < p; ++k) {
        double m = std::abs(buf[k]) * pivot_mag;
        if (m > best_mag) {
          best_mag = m;
          best_cell = {yp, zp};
          best_gamma = static_cast<double>(k) / static_cast<double>(p);
          best_gp = gp;
        }
      }
    }
  }

  auto factored_sum = [&](long long yp, long long zp, double gamma, double gp) {
    Complex total(0.0, 0.0);
    for (long long y = ymin; y <= ymax; ++y) {
      Complex row(0.0, 0.0);
      for (long long z = 1; z <= c; ++z)
        row += fat(y, z) * std::conj(fat(y, zp)) * std::conj(fat(yp, z)) * unit_phase(-gp * static_cast<double>(z));
      total += row * unit_phase(-gamma * static_cast<double>(y - ymin));
    }
    return total * fat(yp, zp);
  };

  // Ternary refinement, one pass in gamma then one in gamma_prime.
  auto [yp, zp] = best_cell;
  {
    double lo = best_gamma - 1.0 / static_cast<double>(p), hi = best_gamma + 1.0 / static_cast<double>(p);
    while (hi - lo > 1e-10) {
      double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (std::abs(factored_sum(yp, zp, m1, best_gp)) < std::abs(factored_sum(yp, zp, m2, best_gp)))
        lo = m1;
      else
        hi = m2;
    }
    double cand = 0.5 * (lo + hi);
    if (std::abs(factored_sum(yp, zp, cand, best_gp)) > best_mag) best_gamma = cand;
  }
  {
    double lo = best_gp - 1.0 / static_cast<double>(gz), hi = best_gp + 1.0 / static_cast<double>(gz);
    double cur = std::abs(factored_sum(yp, zp, best_gamma, best_gp));
    while (hi - lo > 1e-10) {
      double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (std::abs(factored_sum(yp, zp, best_gamma, m1)) < std::abs(factored_sum(yp, zp, best_gamma, m2)))
        lo = m1;
      else
        hi = m2;
    }
    double cand = 0.5 * (lo + hi);
    if (std::abs(factored_sum(yp, zp, best_gamma, cand)) > cur) best_gp = cand;
  }

  // Materialize the factor tables (1-bounded by the 1/scale normalizations).
  out.gamma = best_gamma;
  out.gamma_prime = best_gp;
  out.ymin = ymin;
  out.ltab.resize(static_cast<std::size_t>(yw));
  for (long long y = ymin; y <= ymax; ++y)
    out.ltab[static_cast<std::size_t>(y - ymin)] =
        std::conj(fat(y, zp)) * unit_phase(-best_gamma * static_cast<double>(y - ymin)) / scale;
  out.rtab.resize(static_cast<std::size_t>(c));
  const Complex pivot_factor =
      fat(yp, zp) * unit_phase(best_gamma * static_cast<double>(yp - ymin)) / (scale * scale);
  for (long long z = 1; z <= c; ++z)
    out.rtab[static_cast<std::size_t>(z - 1)] =
        std::conj(fat(yp, z)) * unit_phase(best_gp * static_cast<double>(zp - z)) * pivot_factor;

  Complex corr(0.0, 0.0);
  for (long long x = f.lo(); x <= f.hi(); ++x) {
    CellIndex cell = cell_of(x, c, d, dinv);
    corr += f.at(x) * out.ltab[static_cast<std::size_t>(cell.y - ymin)] *
            out.rtab[static_cast<std::size_t>(cell.z - 1)];
  }
  out.corr = corr;
  return out;
}

}  // namespace

double b_norm_pow(const Signal& f, long long b, const Params& params, const Rational& delta1,
                  const Rational& delta2) {
  const long long A = delta1.floor_times(params.M);
  if (A < 1) throw std::invalid_argument("b_norm_pow: floor(delta1*M) = 0");
  TriangularWeight w = mu(delta2, params.M);
  const long long q = params.q;

  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(A));
  for (long long a = 1; a <= A; ++a) {
    Complex v = weighted_box_pow(f, {{2 * q * (a + b), &w}, {2 * q * a, &w}});
    vals.push_back(v.real());
  }
  return pairwise_sum(vals) / static_cast<double>(A);
}

FactorPair invert_arithmetic_box(const Signal& f, long long c, long long d, const Rational& delta2,
                                 int grid_factor) {
  if (c < 1 || d < 1) throw std::invalid_argument("invert_arithmetic_box: c, d must be positive");
  if (grid_factor < 1) throw std::invalid_argument("invert_arithmetic_box: grid_factor must be positive");

  FactorPair out;
  out.c = c;
  out.d = d;
  if (f.empty()) return out;

  const long long m = std::gcd(c, d);
  const long long cm = c / m, dm = d / m;

  // Solve each residue class x = m*xk - k, k = 0..m-1, then phase-align so
  // the class correlations add with a common argument.
  std::vector<CoprimeFactor> cls(static_cast<std::size_t>(m));
  std::vector<Complex> align(static_cast<std::size_t>(m), Complex(1.0, 0.0));
  for (long long k = 0; k < m; ++k) {
    long long xlo = (f.lo() + k + m - 1) / m;  // ceil for positive ranges
    while (m * xlo - k < f.lo()) ++xlo;
    long long xhi = (f.hi() + k) / m;
    while (m * xhi - k > f.hi()) --xhi;
    Signal fk;
    if (xhi >= xlo) {
      CArray v(xhi - xlo + 1);
      for (long long x = xlo; x <= xhi; ++x) v[x - xlo] = f.at(m * x - k);
      fk = Signal(xlo, std::move(v), f.exact_integer());
    }
    cls[static_cast<std::size_t>(k)] = solve_coprime(fk, cm, dm, grid_factor);
    Complex s = cls[static_cast<std::size_t>(k)].corr;
    if (std::abs(s) > 0.0) align[static_cast<std::size_t>(k)] = std::conj(s) / std::abs(s);
  }

  // Lifted factors over the support of f. r(x) depends only on x mod c by
  // construction (class index on x mod m, class table on xk mod c/m).
  const long long dinv = cm == 1 ? 0 : mod_inverse(dm, cm);
  CArray lv = CArray::Zero(f.width());
  CArray rv = CArray::Zero(f.width());
  for (long long x = f.lo(); x <= f.hi(); ++x) {
    long long k = ((-x) % m + m) % m;
    long long xk = (x + k) / m;
    const CoprimeFactor& cf = cls[static_cast<std::size_t>(k)];
    if (cf.rtab.empty()) continue;
    CellIndex cell = cell_of(xk, cm, dm, dinv);
    rv[x - f.lo()] = cf.rtab[static_cast<std::size_t>(cell.z - 1)];
    long long yi = cell.y - cf.ymin;
    if (yi >= 0 && yi < static_cast<long long>(cf.ltab.size()))
      lv[x - f.lo()] = cf.ltab[static_cast<std::size_t>(yi)] * align[static_cast<std::size_t>(k)];
  }
  out.l = Signal(f.lo(), std::move(lv), false);
  out.r = Signal(f.lo(), std::move(rv), false);
  out.gamma = cls[0].gamma;
  out.gamma_prime = cls[0].gamma_prime;

  Complex corr(0.0, 0.0);
  for (long long x = f.lo(); x <= f.hi(); ++x) corr += f.at(x) * out.l.at(x) * out.r.at(x);
  out.correlation = std::abs(corr);

  // Exceptional-set count for the d-direction almost-invariance of l, with
  // epsilon = delta2 and M = isqrt(width).
  long long meff = static_cast<long long>(std::sqrt(static_cast<double>(f.width())));
  long long zmax = delta2.floor_times(meff);
  long long count = 0;
  for (long long x = f.lo(); x <= f.hi(); ++x) {
    for (long long z = 1; z <= zmax; ++z) {
      if (std::abs(out.l.at(x) - out.l.at(x + d * z)) > 1e-12) {
        ++count;
        break;
      }
    }
  }
  out.exceptional_count = count;
  return out;
}

Rational gcd_tail_proportion(long long X, long long Y) {
  if (X < 1 || Y < 1) throw std::invalid_argument("gcd_tail_proportion: X, Y must be positive");
  long long count = 0;
  for (long long a = 1; a <= X; ++a)
    for (long long b = 1; b <= X; ++b)
      if (std::gcd(a, b) > Y) ++count;
  return Rational(count, X * X);
}

Box3Report box3_correlation_check(const Tensor3& f, const Tensor3& g1, const Tensor3& g2,
                                  const Tensor3& g3) {
  const auto& dims = f.dims;
  const long long n1 = dims[0], n2 = dims[1], n3 = dims[2];
  if (n1 < 1 || n2 < 1 || n3 < 1) throw std::invalid_argument("box3_correlation_check: empty axis");
  for (const Tensor3* g : {&g1, &g2, &g3})
    if (g->dims != dims) throw std::invalid_argument("box3_correlation_check: dimension mismatch");

  auto check_independent = [&](const Tensor3& g, int axis) {
    for (long long i = 0; i < n1; ++i)
      for (long long j = 0; j < n2; ++j)
        for (long long k = 0; k < n3; ++k) {
          long long i0 = axis == 0 ? 0 : i, j0 = axis == 1 ? 0 : j, k0 = axis == 2 ? 0 : k;
          if (std::abs(g.at(i, j, k) - g.at(i0, j0, k0)) > 1e-12)
            throw std::invalid_argument("box3_correlation_check: g depends on its own coordinate");
        }
  };
  check_independent(g1, 0);
  check_independent(g2, 1);
  check_independent(g3, 2);

  const double total = static_cast<double>(n1 * n2 * n3);
  Complex corr(0.0, 0.0);
  for (long long i = 0; i < n1; ++i)
    for (long long j = 0; j < n2; ++j)
      for (long long k = 0; k < n3; ++k)
        corr += f.at(i, j, k) * g1.at(i, j, k) * g2.at(i, j, k) * g3.at(i, j, k);

  Box3Report rep;
  rep.corr = std::abs(corr) / total;

  Complex box(0.0, 0.0);
  for (long long i = 0; i < n1; ++i)
    for (long long ip = 0; ip < n1; ++ip)
      for (long long j = 0; j < n2; ++j)
        for (long long jp = 0; jp < n2; ++jp)
          for (long long k = 0; k < n3; ++k)
            for (long long kp = 0; kp < n3; ++kp) {
              Complex t = f.at(i, j, k) * std::conj(f.at(ip, j, k)) * std::conj(f.at(i, jp, k)) *
                          f.at(ip, jp, k) * std::conj(f.at(i, j, kp)) * f.at(ip, j, kp) *
                          f.at(i, jp, kp) * std::conj(f.at(ip, jp, kp));
              box += t;
            }
  double avg = std::max(0.0, box.real()) / (total * total);
  rep.box = std::pow(avg, 1.0 / 8.0);
  rep.holds = rep.corr <= rep.box * (1.0 + 1e-9) + 1e-12;
  return rep;
}

double u5_ops_estimate(long long width) {
  double w = static_cast<double>(width);
  return 4.0 * w * w * w * w;
}

ConcatReport concat_experiment(const Signal& f, const Params& params, const Rational& delta1,
                               const Rational& delta2, const Rational& delta3) {
  (void)delta3;
  ConcatReport rep;
  rep.N = params.N;
  rep.q = params.q;
  rep.M = params.M;
  if (f.empty()) return rep;

  long long max_width = f.width() / params.q + 1;
  double est = u5_ops_estimate(max_width);
  if (est > kU5OpsGuard) throw FeasibilityError(est);

  rep.lhs = triple_box_average_full(f, params, delta1, delta2).value;

  std::vector<double> locals;
  locals.reserve(static_cast<std::size_t>(params.q));
  for (long long u = 1; u <= params.q; ++u) locals.push_back(u_norm_local_pow(f, 5, u, params.q));
  rep.rhs = pairwise_sum(locals) / static_cast<double>(params.q);
  return rep;
}

}  // namespace unif

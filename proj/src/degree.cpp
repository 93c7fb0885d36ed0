#include "unif/degree.hpp"

#include "unif/concat.hpp"
#include "unif/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace unif {

namespace {

double frac(double x) { return x - std::floor(x); }

double dist_to_int(double x) { return std::abs(x - std::llround(x)); }

Complex unit_phase(double turns) {
  double ang = 2.0 * std::numbers::pi * turns;
  return Complex(std::cos(ang), std::sin(ang));
}

}  // namespace

PhaseTable phase_map(const Signal& F, long long q, long long u, int m,
                     const std::vector<std::vector<long long>>& hs, int grid_factor) {
  if (q < 1 || m < 1) throw std::invalid_argument("phase_map: q, m must be positive");
  PhaseTable table;
  Signal Fu = shift(F, u);
  for (const auto& h : hs) {
    if (static_cast<int>(h.size()) != m) throw std::invalid_argument("phase_map: tuple arity mismatch");
    std::vector<long long> qh(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) qh[i] = q * h[i];
    Signal g = lattice_restrict(mult_derivative(Fu, qh), q);
    if (g.empty()) {
      table.entries[h] = Frequency{0.0, 0.0};
    } else {
      table.entries[h] = u2_inverse(g, grid_factor);
    }
  }
  return table;
}

CubeSet cube_set(const std::vector<std::vector<long long>>& H) {
  if (H.empty()) throw std::invalid_argument("cube_set: empty base");
  const int m = static_cast<int>(H[0].size());
  if (m < 1) throw std::invalid_argument("cube_set: m must be positive");
  for (const auto& h : H)
    if (static_cast<int>(h.size()) != m) throw std::invalid_argument("cube_set: ragged base");

  CubeSet out;
  out.m = m;
  out.base = H;

  std::set<std::vector<long long>> members(H.begin(), H.end());
  std::vector<std::vector<long long>> values(m);  // per-coordinate value sets
  for (int i = 0; i < m; ++i) {
    std::set<long long> vs;
    for (const auto& h : H) vs.insert(h[static_cast<std::size_t>(i)]);
    values[i].assign(vs.begin(), vs.end());
  }

  // Odometer over (k_{10}, k_{11}, ..., k_{m0}, k_{m1}); keep a cube iff
  // every mixed selection lies in H.
  std::vector<std::size_t> idx(2 * static_cast<std::size_t>(m), 0);
  std::vector<long long> k(2 * static_cast<std::size_t>(m), 0);
  std::vector<long long> mixed(static_cast<std::size_t>(m), 0);
  while (true) {
    for (int i = 0; i < m; ++i) {
      k[static_cast<std::size_t>(i)] = values[i][idx[2 * static_cast<std::size_t>(i)]];
      k[static_cast<std::size_t>(i + m)] = values[i][idx[2 * static_cast<std::size_t>(i) + 1]];
    }
    bool ok = true;
    for (unsigned omega = 0; ok && omega < (1u << m); ++omega) {
      for (int i = 0; i < m; ++i)
        mixed[static_cast<std::size_t>(i)] =
            k[static_cast<std::size_t>(i) + ((omega >> i) & 1u ? static_cast<std::size_t>(m) : 0u)];
      ok = members.count(mixed) > 0;
    }
    if (ok) {
      // Emit in the (k_{10..m0}, k_{11..m1}) layout.
      std::vector<long long> cube(2 * static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        cube[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(i)];
        cube[static_cast<std::size_t>(i + m)] = k[static_cast<std::size_t>(i + m)];
      }
      out.cubes.push_back(std::move(cube));
    }
    std::size_t pos = 0;
    while (pos < idx.size()) {
      int coord = static_cast<int>(pos / 2);
      if (++idx[pos] < values[coord].size()) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == idx.size()) break;
  }
  return out;
}

double psi_combination(const PhaseTable& phi, const std::vector<long long>& k) {
  if (k.empty() || k.size() % 2 != 0) throw std::invalid_argument("psi_combination: k must be a 2m-tuple");
  const int m = static_cast<int>(k.size() / 2);
  double psi = 0.0;
  std::vector<long long> vertex(static_cast<std::size_t>(m));
  for (unsigned omega = 0; omega < (1u << m); ++omega) {
    for (int i = 0; i < m; ++i)
      vertex[static_cast<std::size_t>(i)] =
          k[static_cast<std::size_t>(i) + ((omega >> i) & 1u ? static_cast<std::size_t>(m) : 0u)];
    auto it = phi.entries.find(vertex);
    if (it == phi.entries.end()) throw std::invalid_argument("psi_combination: missing vertex");
    psi += (std::popcount(omega) % 2 == 0 ? 1.0 : -1.0) * it->second.beta;
  }
  return frac(psi);
}

double lemma63_average(const Signal& f0, const Signal& f1, const ProgressionInstance& inst,
                       long long u, int m, const std::vector<std::vector<long long>>& H,
                       const PhaseTable& phi) {
  if (f0.empty() || f1.empty() || H.empty()) return 0.0;
  CubeSet cs = cube_set(H);
  if (static_cast<int>(cs.m) != m) throw std::invalid_argument("lemma63_average: arity mismatch");
  if (cs.cubes.empty()) return 0.0;

  const long long q = inst.q, M = inst.M;
  Signal t0 = shift(f0, u), t1 = shift(f1, u);
  double est = static_cast<double>(cs.cubes.size()) * static_cast<double>(M) *
               static_cast<double>(t0.width() / q + M * M + 2);
  if (est > 1e9) throw FeasibilityError(est);

  std::vector<double> vals;
  vals.reserve(cs.cubes.size());
  for (const auto& k : cs.cubes) {
    std::vector<long long> d(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      d[static_cast<std::size_t>(i)] = q * (k[static_cast<std::size_t>(i + m)] - k[static_cast<std::size_t>(i)]);
    Signal A = mult_derivative(t0, d);
    Signal B = mult_derivative(t1, d);
    if (A.empty() || B.empty()) {
      vals.push_back(0.0);
      continue;
    }
    double psi = psi_combination(phi, k);
    long long xlo = (A.lo() + q) / q - 2, xhi = (A.hi() + q * M * M) / q + 2;
    Complex S(0.0, 0.0);
    for (long long x = xlo; x <= xhi; ++x) {
      Complex inner(0.0, 0.0);
      for (long long y = 1; y <= M; ++y)
        inner += A.at(q * x - q * y * y) * B.at(q * x + y - q * y * y);
      if (inner != Complex(0.0, 0.0)) S += inner / static_cast<double>(M) * unit_phase(psi * static_cast<double>(x));
    }
    vals.push_back(std::norm(S));
  }
  return pairwise_sum(vals) / static_cast<double>(cs.cubes.size());
}

RationalApprox find_denominator(double alpha, long long q, long long Tmax, double target_eps) {
  (void)target_eps;
  if (q < 1 || Tmax < 1) throw std::invalid_argument("find_denominator: q, Tmax must be positive");
  alpha = frac(alpha);
  RationalApprox best;
  double best_val = -1.0;
  for (long long t = 1; t <= Tmax; ++t) {
    double v = static_cast<double>(q) * static_cast<double>(q) * static_cast<double>(t) * alpha;
    double dist = dist_to_int(v);
    if (best_val < 0.0 || dist < best_val) {
      best_val = dist;
      best.t = t;
      best.a = std::llround(v);
      best.theta = v - static_cast<double>(best.a);
      best.achieved = dist;
      best.k = 0;
    }
  }
  return best;
}

RationalApprox decompose(double alpha, const Rational& ab, double gamma, double C) {
  if (gamma <= 0.0 || C <= 0.0) throw std::invalid_argument("decompose: gamma, C must be positive");
  const double step = gamma / C;
  const double beta = alpha - ab.value();
  RationalApprox out;
  out.a = ab.num;
  out.t = ab.den;
  out.k = static_cast<long long>(std::floor(beta / step));
  out.theta = (beta - static_cast<double>(out.k) * step) / step;
  out.achieved = std::abs(alpha - (ab.value() + (static_cast<double>(out.k) + out.theta) * step));
  return out;
}

Lemma64Report lemma64_check(const Signal& f, long long q, int m,
                            const std::vector<std::function<double(const std::vector<long long>&)>>& phis,
                            ExponentMode mode) {
  if (q < 1 || m < 1) throw std::invalid_argument("lemma64_check: q, m must be positive");
  if (static_cast<int>(phis.size()) != m) throw std::invalid_argument("lemma64_check: need one phi per coordinate");

  Lemma64Report rep;
  Signal fq = lattice_restrict(f, q);
  if (fq.empty()) {
    rep.holds = true;
    return rep;
  }
  const long long hmax = (f.width() - 1) / q;

  // Enumerate the h-grid, validating that each phi_i ignores coordinate i.
  std::vector<std::vector<long long>> grid;
  std::vector<long long> h(static_cast<std::size_t>(m), -hmax);
  while (true) {
    grid.push_back(h);
    int pos = 0;
    while (pos < m && ++h[static_cast<std::size_t>(pos)] > hmax) {
      h[static_cast<std::size_t>(pos)] = -hmax;
      ++pos;
    }
    if (pos == m) break;
  }
  for (int i = 0; i < m; ++i)
    for (const auto& g : grid) {
      std::vector<long long> pinned = g;
      pinned[static_cast<std::size_t>(i)] = -hmax;
      double d = frac(phis[static_cast<std::size_t>(i)](g) - phis[static_cast<std::size_t>(i)](pinned));
      if (std::min(d, 1.0 - d) > 1e-12)
        throw std::invalid_argument("lemma64_check: phi depends on its own coordinate");
    }

  std::vector<double> terms;
  terms.reserve(grid.size());
  for (const auto& g : grid) {
    std::vector<long long> qh(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) qh[static_cast<std::size_t>(i)] = q * g[static_cast<std::size_t>(i)];
    Signal D = lattice_restrict(mult_derivative(f, qh), q);
    if (D.empty()) {
      terms.push_back(0.0);
      continue;
    }
    double beta = 0.0;
    for (int i = 0; i < m; ++i) beta += phis[static_cast<std::size_t>(i)](g);
    double c = phase_correlation(D, frac(beta));
    terms.push_back(c * c);
  }
  rep.lhs = pairwise_sum(terms);

  const double W = static_cast<double>(fq.width());
  const double e = (mode == ExponentMode::kPaper ? static_cast<double>(m)
                                                 : static_cast<double>(m + 2)) *
                   (1.0 - std::pow(2.0, -m));
  const double unorm2 = std::pow(std::abs(u_norm_pow(fq, m + 1)), std::pow(2.0, -m));
  rep.rhs = std::pow(W, e) * unorm2;
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-9) + 1e-12;
  return rep;
}

DegreeReport degree_lower_report(const Signal& f0, const Signal& f1,
                                 const ProgressionInstance& inst, long long u,
                                 const DegreeThresholds& thresholds) {
  DegreeReport rep;
  Signal F = dual_function(f0, f1, inst);
  Signal G = subsample(F, u, inst.q);
  rep.W = G.width();
  if (G.empty()) return rep;
  double est = 32.0 * static_cast<double>(rep.W) * static_cast<double>(rep.W);
  if (est > kU5OpsGuard) throw FeasibilityError(est);

  rep.u3_mass = std::abs(u_norm_pow(G, 3));
  rep.u2_mass = std::abs(u_norm_pow(G, 2));

  const double wq = static_cast<double>(inst.N) / static_cast<double>(inst.q);
  const double gate = thresholds.gamma * wq * wq;
  for (long long h = -(rep.W - 1); h <= rep.W - 1; ++h) {
    Signal D = mult_derivative(G, h);
    Frequency fr = D.empty() ? Frequency{0.0, 0.0} : u2_inverse(D, 4);
    rep.phases.entries[{h}] = fr;
    if (fr.correlation * fr.correlation >= gate) rep.H.push_back(h);
  }
  if (rep.H.empty()) return rep;

  std::vector<std::vector<long long>> H1;
  H1.reserve(rep.H.size());
  for (long long h : rep.H) H1.push_back({h});
  CubeSet cs = cube_set(H1);
  rep.cube_count = static_cast<long long>(cs.cubes.size());

  const long long q2 = inst.q * inst.q;
  std::map<std::array<long long, 3>, std::vector<long long>> fibers;  // key -> k0 list
  for (const auto& k : cs.cubes) {
    double psi = psi_combination(rep.phases, k);
    RationalApprox ra = find_denominator(psi, inst.q, thresholds.tmax);
    RationalApprox dec = decompose(psi, Rational(ra.a, q2 * ra.t), thresholds.dec_gamma, thresholds.dec_c);
    std::array<long long, 3> key{ra.a, ra.t, dec.k};
    ++rep.histogram[key];
    fibers[key].push_back(k[0]);
  }
  for (const auto& [key, ks] : fibers) {
    if (static_cast<long long>(ks.size()) > rep.fiber_size) {
      rep.fiber_size = static_cast<long long>(ks.size());
      rep.best_fiber = key;
    }
  }
  std::set<long long> h3(fibers[rep.best_fiber].begin(), fibers[rep.best_fiber].end());
  rep.H3.assign(h3.begin(), h3.end());

  const double phi1 =
      static_cast<double>(rep.best_fiber[0]) / (static_cast<double>(q2) * static_cast<double>(rep.best_fiber[1]));
  std::vector<double> terms;
  terms.reserve(rep.H3.size());
  for (long long h : rep.H3) {
    Signal D = mult_derivative(G, h);
    double c = D.empty() ? 0.0 : phase_correlation(D, frac(phi1));
    terms.push_back(c * c);
  }
  rep.fiber_lhs = pairwise_sum(terms);
  return rep;
}

}  // namespace unif

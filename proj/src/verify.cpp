#include "unif/verify.hpp"

#include "unif/concat.hpp"
#include "unif/counting.hpp"
#include "unif/increment.hpp"
#include "unif/prng.hpp"
#include "unif/vdc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace unif {

namespace {

Signal random_bounded(SplitMix64& rng, long long width) {
  CArray v(width);
  for (long long i = 0; i < width; ++i) {
    double mag = rng.next_unit();
    double arg = 2.0 * std::numbers::pi * rng.next_unit();
    v[i] = mag * Complex(std::cos(arg), std::sin(arg));
  }
  return Signal(rng.next_range(-8, 8), std::move(v), false);
}

Signal random_pm(SplitMix64& rng, long long width) {
  CArray v(width);
  for (long long i = 0; i < width; ++i) {
    std::uint64_t r = rng.next_below(3);
    v[i] = r == 0 ? 0.0 : (r == 1 ? 1.0 : -1.0);
  }
  return Signal(rng.next_range(-4, 4), std::move(v), true);
}

std::vector<long long> random_subset(SplitMix64& rng, long long n, double p) {
  std::vector<long long> out;
  for (long long x = 1; x <= n; ++x)
    if (rng.next_unit() < p) out.push_back(x);
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

using TrialFn = bool (*)(std::uint64_t, long long, ExponentMode, std::string*,
                         std::map<std::string, double>*);

bool trial_gcs(std::uint64_t seed, long long width, ExponentMode, std::string* diag,
               std::map<std::string, double>* stats) {
  SplitMix64 rng(seed);
  int s = static_cast<int>(rng.next_range(1, 3));
  long long w = rng.next_range(2, std::max<long long>(2, std::min<long long>(width, 12)));
  std::vector<Signal> fs;
  for (int i = 0; i < (1 << s); ++i) fs.push_back(random_bounded(rng, w));
  GcsReport rep = gcs_check(fs, s);
  (*stats)["min_margin"] = std::min(stats->count("min_margin") ? stats->at("min_margin") : 1e300,
                                    rep.rhs - rep.lhs);
  if (!rep.holds) *diag = "gcs lhs " + fmt(rep.lhs) + " > rhs " + fmt(rep.rhs);
  return rep.holds;
}

bool trial_vdc(std::uint64_t seed, long long, ExponentMode, std::string* diag,
               std::map<std::string, double>*) {
  static constexpr std::pair<long long, long long> kCases[] = {{20, 3}, {50, 7}, {64, 16}};
  SplitMix64 rng(seed);
  auto [M, H] = kCases[rng.next_below(3)];
  CArray v(M);
  for (long long i = 0; i < M; ++i) {
    double arg = 2.0 * std::numbers::pi * rng.next_unit();
    v[i] = rng.next_unit() * Complex(std::cos(arg), std::sin(arg));
  }
  VdcReport rep = vdc_check(Signal(1, std::move(v), false), M, H);
  if (!rep.holds) *diag = "vdc lhs " + fmt(rep.lhs) + " > rhs " + fmt(rep.rhs);
  return rep.holds;
}

bool trial_lemma58(std::uint64_t seed, long long, ExponentMode, std::string* diag,
                   std::map<std::string, double>*) {
  SplitMix64 rng(seed);
  std::array<long long, 3> dims{rng.next_range(1, 8), rng.next_range(1, 8), rng.next_range(1, 8)};
  auto randomize = [&rng](Tensor3& t) {
    for (auto& v : t.v) {
      double arg = 2.0 * std::numbers::pi * rng.next_unit();
      v = rng.next_unit() * Complex(std::cos(arg), std::sin(arg));
    }
  };
  Tensor3 f{dims, std::vector<Complex>(static_cast<std::size_t>(dims[0] * dims[1] * dims[2]))};
  randomize(f);
  // g_i constant along coordinate i: fill the zero-slice and broadcast.
  std::array<Tensor3, 3> gs;
  for (int axis = 0; axis < 3; ++axis) {
    Tensor3& g = gs[static_cast<std::size_t>(axis)];
    g.dims = dims;
    g.v.assign(f.v.size(), Complex(0.0, 0.0));
    for (long long i = 0; i < dims[0]; ++i)
      for (long long j = 0; j < dims[1]; ++j)
        for (long long k = 0; k < dims[2]; ++k) {
          if ((axis == 0 && i != 0) || (axis == 1 && j != 0) || (axis == 2 && k != 0)) continue;
          double arg = 2.0 * std::numbers::pi * rng.next_unit();
          g.at(i, j, k) = rng.next_unit() * Complex(std::cos(arg), std::sin(arg));
        }
    for (long long i = 0; i < dims[0]; ++i)
      for (long long j = 0; j < dims[1]; ++j)
        for (long long k = 0; k < dims[2]; ++k)
          g.at(i, j, k) = g.at(axis == 0 ? 0 : i, axis == 1 ? 0 : j, axis == 2 ? 0 : k);
  }
  Box3Report rep = box3_correlation_check(f, gs[0], gs[1], gs[2]);
  if (!rep.holds) *diag = "corr " + fmt(rep.corr) + " > box " + fmt(rep.box);
  return rep.holds;
}

bool trial_lemma64(std::uint64_t seed, long long width, ExponentMode mode, std::string* diag,
                   std::map<std::string, double>*) {
  SplitMix64 rng(seed);
  int m = static_cast<int>(rng.next_range(1, 2));
  long long w = rng.next_range(2, std::max<long long>(2, std::min<long long>(width, 16)));
  Signal f = random_pm(rng, w);
  std::vector<double> consts;
  for (int i = 0; i < m; ++i) consts.push_back(rng.next_unit());
  std::vector<std::function<double(const std::vector<long long>&)>> phis;
  for (int i = 0; i < m; ++i)
    phis.push_back([c = consts[static_cast<std::size_t>(i)]](const std::vector<long long>&) { return c; });
  Lemma64Report rep = lemma64_check(f, 1, m, phis, mode);
  if (!rep.holds) *diag = "lemma64 lhs " + fmt(rep.lhs) + " > rhs " + fmt(rep.rhs);
  return rep.holds;
}

bool trial_mu(std::uint64_t seed, long long, ExponentMode, std::string* diag,
              std::map<std::string, double>*) {
  SplitMix64 rng(seed);
  long long den = rng.next_range(2, 12);
  Rational delta(rng.next_range(1, den), den);
  long long M = rng.next_range(den, 400);
  TriangularWeight w = mu(delta, M);
  long long total = 0;
  for (long long h = -w.H(); h <= w.H(); ++h) total += w.r(h);
  if (total != w.unnormalized_mass()) {
    *diag = "sum r = " + std::to_string(total) + " != H^2 = " + std::to_string(w.unnormalized_mass());
    return false;
  }
  Rational mass = w.mass_exact();
  Rational expect(w.H() * w.H() * delta.den * delta.den, delta.num * delta.num * M);
  if (!(mass == expect)) {
    *diag = "mass " + mass.str() + " != " + expect.str();
    return false;
  }
  return true;
}

bool trial_counting(std::uint64_t seed, long long, ExponentMode, std::string* diag,
                    std::map<std::string, double>*) {
  SplitMix64 rng(seed);
  long long N = rng.next_range(16, 128);
  long long q = rng.next_range(1, 4);
  ProgressionInstance inst = ProgressionInstance::make(N, q);
  Signal f0 = random_bounded(rng, rng.next_range(4, N));
  Signal f1 = random_bounded(rng, rng.next_range(4, N));
  Signal f2 = random_bounded(rng, rng.next_range(4, N));
  Complex lam = lambda(f0, f1, f2, inst);
  Signal F = dual_function(f0, f1, inst);
  Complex via_dual(0.0, 0.0);
  for (long long x = F.lo(); x <= F.hi(); ++x) via_dual += F.at(x) * f2.at(x);
  via_dual *= static_cast<double>(inst.M);
  double scale = std::max(1.0, std::abs(lam));
  if (std::abs(lam - via_dual) > 1e-9 * scale) {
    *diag = "lambda " + fmt(std::abs(lam)) + " vs dual " + fmt(std::abs(via_dual));
    return false;
  }
  return true;
}

bool trial_u2_oracle(std::uint64_t seed, long long width, ExponentMode, std::string* diag,
                     std::map<std::string, double>*) {
  SplitMix64 rng(seed);
  long long n = rng.next_range(2, std::max<long long>(2, std::min<long long>(width, 30)));
  std::vector<long long> A = random_subset(rng, n, 0.5);
  if (A.empty()) A.push_back(1);
  Signal f = Signal::from_set(A);
  long long fast = std::llround(u_norm_pow(f, 2).real());
  std::vector<char> mem(static_cast<std::size_t>(n) + 1, 0);
  for (long long x : A) mem[static_cast<std::size_t>(x)] = 1;
  long long slow = 0;
  for (long long x = 1; x <= n; ++x)
    for (long long h1 = 1 - x; h1 <= n - x; ++h1)
      for (long long h2 = 1 - x; h2 <= n - x; ++h2) {
        long long d = x + h1 + h2;
        if (d < 1 || d > n) continue;
        if (mem[static_cast<std::size_t>(x)] && mem[static_cast<std::size_t>(x + h1)] &&
            mem[static_cast<std::size_t>(x + h2)] && mem[static_cast<std::size_t>(d)])
          ++slow;
      }
  if (fast != slow) {
    *diag = "fft count " + std::to_string(fast) + " != brute " + std::to_string(slow);
    return false;
  }
  return true;
}

bool trial_boxavg(std::uint64_t seed, long long width, ExponentMode, std::string* diag,
                  std::map<std::string, double>*) {
  SplitMix64 rng(seed);
  long long N = rng.next_range(25, std::max<long long>(25, std::min<long long>(width * 8, 120)));
  long long q = rng.next_range(1, 2);
  Params params = Params::make(N, q);
  Signal f = random_bounded(rng, rng.next_range(8, N));
  Rational half(1, 2);
  double scale = std::pow(f.l1_norm() + 1.0, 8);
  double avg = triple_box_average(f, params, half, half);
  if (avg < -1e-9 * scale) {
    *diag = "triple box average " + fmt(avg) + " negative";
    return false;
  }
  double bn = b_norm_pow(f, rng.next_range(0, 3), params, half, half);
  if (bn < -1e-9 * std::pow(f.l1_norm() + 1.0, 4)) {
    *diag = "b-norm power " + fmt(bn) + " negative";
    return false;
  }
  return true;
}

bool trial_invertbox(std::uint64_t seed, long long width, ExponentMode, std::string* diag,
                     std::map<std::string, double>*) {
  SplitMix64 rng(seed);
  long long c = rng.next_range(1, 7), d = rng.next_range(1, 7);
  long long w = rng.next_range(8, std::max<long long>(8, std::min<long long>(width * 2, 60)));
  Signal f = random_pm(rng, w);
  if (f.empty()) return true;
  FactorPair fp = invert_arithmetic_box(f, c, d, Rational(1, 4), 4);
  for (long long x = fp.r.lo(); x + c <= fp.r.hi(); ++x)
    if (fp.r.at(x) != fp.r.at(x + c)) {
      *diag = "r not " + std::to_string(c) + "-periodic at x = " + std::to_string(x);
      return false;
    }
  Complex re(0.0, 0.0);
  for (long long x = f.lo(); x <= f.hi(); ++x) re += f.at(x) * fp.l.at(x) * fp.r.at(x);
  if (std::abs(std::abs(re) - fp.correlation) > 1e-9 * (1.0 + fp.correlation)) {
    *diag = "correlation recount " + fmt(std::abs(re)) + " != " + fmt(fp.correlation);
    return false;
  }
  if (fp.l.sup_norm() > 1.0 + 1e-9 || fp.r.sup_norm() > 1.0 + 1e-9) {
    *diag = "factor not 1-bounded";
    return false;
  }
  return true;
}

bool trial_increment_planted(std::uint64_t seed, long long, ExponentMode, std::string* diag,
                             std::map<std::string, double>* stats) {
  SplitMix64 rng(seed);
  long long N = 2000, q = 1;
  long long qp = rng.next_range(2, 4);
  long long Np = rng.next_range(60, 120);
  long long a = rng.next_range(0, N - q * qp * Np - 1);
  double ain = 0.85 + 0.1 * rng.next_unit();
  std::vector<long long> A = planted_increment_set(N, q, qp, a, Np, ain, 0.3, rng.next());
  ProgressionInstance inst = ProgressionInstance::make(N, q);
  IncrementResult res = find_increment(A, inst, 6, 10, inst.M);
  double got = res.step.alpha_new.value();
  double need = ain - 3.0 * std::sqrt(ain / static_cast<double>(res.step.Nprime));
  (*stats)["min_excess"] = std::min(stats->count("min_excess") ? stats->at("min_excess") : 1e300,
                                    got - need);
  if (got < need) {
    *diag = "recovered density " + fmt(got) + " < " + fmt(need);
    return false;
  }
  return true;
}

bool trial_rescale_transport(std::uint64_t seed, long long, ExponentMode, std::string* diag,
                             std::map<std::string, double>*) {
  SplitMix64 rng(seed);
  long long N = rng.next_range(200, 600);
  long long q = rng.next_range(1, 2);
  ProgressionInstance inst = ProgressionInstance::make(N, q);
  std::vector<long long> A = greedy_free_set(inst);
  if (!enumerate_progressions(A, inst).empty()) {
    *diag = "greedy set not progression-free";
    return false;
  }
  IncrementResult res = find_increment(A, inst, 4, std::min<long long>(10, inst.M), inst.M);
  std::vector<long long> Ap = rescale_set(A, res.step.a, q * res.step.qprime, res.step.Nprime);
  long long q_new = q * q * res.step.qprime;
  if (q_new <= res.step.Nprime) {  // otherwise M' = 0 and freeness is vacuous
    ProgressionInstance inst2 = ProgressionInstance::make(res.step.Nprime, q_new);
    auto bad = enumerate_progressions(Ap, inst2);
    if (!bad.empty()) {
      *diag = "transport violated: witness x = " + std::to_string(bad[0].x) +
              ", y = " + std::to_string(bad[0].y);
      return false;
    }
  }
  if (!(Rational(static_cast<long long>(Ap.size()), res.step.Nprime) == res.step.alpha_new)) {
    *diag = "alpha_new recount mismatch";
    return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"gcs",       "vdc",        "lemma58",           "lemma64",
          "mu",        "counting-identity", "u2-oracle",  "boxavg-positivity",
          "invertbox-post", "increment-planted", "rescale-transport"};
}

VerifyReport run_suite(const std::string& name, long long trials, std::uint64_t seed,
                       long long width, ExponentMode mode) {
  TrialFn fn = nullptr;
  if (name == "gcs") fn = trial_gcs;
  else if (name == "vdc") fn = trial_vdc;
  else if (name == "lemma58") fn = trial_lemma58;
  else if (name == "lemma64") fn = trial_lemma64;
  else if (name == "mu") fn = trial_mu;
  else if (name == "counting-identity") fn = trial_counting;
  else if (name == "u2-oracle") fn = trial_u2_oracle;
  else if (name == "boxavg-positivity") fn = trial_boxavg;
  else if (name == "invertbox-post") fn = trial_invertbox;
  else if (name == "increment-planted") fn = trial_increment_planted;
  else if (name == "rescale-transport") fn = trial_rescale_transport;
  else throw std::invalid_argument("unknown suite: " + name);

  VerifyReport rep;
  rep.suite = name;
  rep.trials = trials;
  SplitMix64 master(seed);
  for (long long t = 0; t < trials; ++t) {
    std::uint64_t trial_seed = master.next();
    std::string diag;
    bool ok = fn(trial_seed, width, mode, &diag, &rep.stats);
    if (!ok) rep.failures.push_back({trial_seed, diag});
  }
  // Paper-mode lemma64 keeps its documented counterexample on record.
  if (name == "lemma64" && mode == ExponentMode::kPaper) {
    std::vector<std::function<double(const std::vector<long long>&)>> zero{
        [](const std::vector<long long>&) { return 0.0; }};
    Lemma64Report r8 = lemma64_check(Signal::indicator(1, 8), 1, 1, zero, ExponentMode::kPaper);
    rep.stats["indicator8_lhs"] = r8.lhs;
    rep.stats["indicator8_rhs"] = r8.rhs;
    if (!r8.holds) rep.failures.push_back({0, "documented: 1_[8] fails the paper exponent"});
  }
  return rep;
}

}  // namespace unif

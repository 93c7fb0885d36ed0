#include "unif/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace unif {

namespace {

bool is_pm1_or_zero(const Complex& v) {
  if (v.imag() != 0.0) return false;
  double r = v.real();
  return r == 0.0 || r == 1.0 || r == -1.0;
}

}  // namespace

Signal::Signal(long long offset, CArray values, bool exact_integer)
    : offset_(offset), values_(std::move(values)), exact_(exact_integer) {
  trim();
  if (exact_) refresh_exact_flag();
}

Signal Signal::indicator(long long lo, long long hi) {
  if (hi < lo) return Signal();
  CArray v = CArray::Ones(hi - lo + 1);
  return Signal(lo, std::move(v), true);
}

Signal Signal::from_set(const std::vector<long long>& xs) {
  if (xs.empty()) return Signal();
  auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
  CArray v = CArray::Zero(*mx - *mn + 1);
  for (long long x : xs) v[x - *mn] = Complex(1.0, 0.0);
  return Signal(*mn, std::move(v), true);
}

Signal Signal::from_values(long long offset, const std::vector<Complex>& vs, bool exact_integer) {
  CArray v(static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) v[static_cast<Eigen::Index>(i)] = vs[i];
  return Signal(offset, std::move(v), exact_integer);
}

void Signal::trim() {
  Eigen::Index n = values_.size();
  Eigen::Index first = 0;
  while (first < n && values_[first] == Complex(0.0, 0.0)) ++first;
  if (first == n) {
    offset_ = 0;
    values_.resize(0);
    return;
  }
  Eigen::Index last = n - 1;
  while (last >= 0 && values_[last] == Complex(0.0, 0.0)) --last;
  if (first > 0 || last < n - 1) {
    CArray v = values_.segment(first, last - first + 1).eval();
    offset_ += first;
    values_ = std::move(v);
  }
}

void Signal::refresh_exact_flag() {
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!is_pm1_or_zero(values_[i])) {
      exact_ = false;
      return;
    }
  }
  exact_ = true;
}

Complex Signal::sum() const { return values_.size() ? values_.sum() : Complex(0.0, 0.0); }

double Signal::sup_norm() const { return values_.size() ? values_.abs().maxCoeff() : 0.0; }

double Signal::l1_norm() const { return values_.size() ? values_.abs().sum() : 0.0; }

double Signal::energy() const { return values_.size() ? values_.abs2().sum() : 0.0; }

bool Signal::operator==(const Signal& o) const {
  if (empty() || o.empty()) return empty() && o.empty();
  if (offset_ != o.offset_ || values_.size() != o.values_.size()) return false;
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    if (values_[i] != o.values_[i]) return false;
  return true;
}

double Signal::max_abs_diff(const Signal& o) const {
  if (empty() && o.empty()) return 0.0;
  long long lo_ = std::min(empty() ? o.lo() : lo(), o.empty() ? lo() : o.lo());
  long long hi_ = std::max(empty() ? o.hi() : hi(), o.empty() ? hi() : o.hi());
  double m = 0.0;
  for (long long x = lo_; x <= hi_; ++x) m = std::max(m, std::abs(at(x) - o.at(x)));
  return m;
}

Signal Signal::scaled(Complex c) const {
  if (empty()) return Signal();
  bool still_exact = exact_ && is_pm1_or_zero(c);
  return Signal(offset_, (values_ * c).eval(), still_exact);
}

Signal shift(const Signal& f, long long h) {
  if (f.empty()) return Signal();
  return Signal(f.offset() - h, f.values(), f.exact_integer());
}

Signal mult_derivative(const Signal& f, long long h) {
  if (f.empty()) return Signal();
  // support(result) = support(f) ∩ (support(f) - h)
  long long lo = std::max(f.lo(), f.lo() - h);
  long long hi = std::min(f.hi(), f.hi() - h);
  if (hi < lo) return Signal();
  Eigen::Index n = hi - lo + 1;
  CArray v = f.values().segment(lo + h - f.lo(), n) * f.values().segment(lo - f.lo(), n).conjugate();
  return Signal(lo, std::move(v), f.exact_integer());
}

Signal mult_derivative(const Signal& f, const std::vector<long long>& hs) {
  Signal g = f;
  for (long long h : hs) g = mult_derivative(g, h);
  return g;
}

Signal asym_derivative(const Signal& f, long long h, long long hp) {
  if (f.empty()) return Signal();
  long long lo = std::max(f.lo() - h, f.lo() - hp);
  long long hi = std::min(f.hi() - h, f.hi() - hp);
  if (hi < lo) return Signal();
  Eigen::Index n = hi - lo + 1;
  CArray v = f.values().segment(lo + h - f.lo(), n) * f.values().segment(lo + hp - f.lo(), n).conjugate();
  return Signal(lo, std::move(v), f.exact_integer());
}

Signal subsample(const Signal& f, long long u, long long q) {
  if (q < 1) throw std::invalid_argument("subsample: q must be positive");
  if (u < 1 || u > q) throw std::invalid_argument("subsample: u must lie in [1, q]");
  if (f.empty()) return Signal();
  // result(x) = f(u + q*x), x from ceil((lo-u)/q) to floor((hi-u)/q)
  auto floor_div = [](long long a, long long b) {
    long long d = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --d;
    return d;
  };
  long long xlo = -floor_div(u - f.lo(), q);
  long long xhi = floor_div(f.hi() - u, q);
  if (xhi < xlo) return Signal();
  CArray v(xhi - xlo + 1);
  for (long long x = xlo; x <= xhi; ++x) v[x - xlo] = f.at(u + q * x);
  return Signal(xlo, std::move(v), f.exact_integer());
}

Signal lattice_restrict(const Signal& f, long long q) {
  if (q < 1) throw std::invalid_argument("lattice_restrict: q must be positive");
  if (q == 1 || f.empty()) return f;
  Signal s = subsample(f, q, q);
  // subsample(f, q, q)(x) = f(q(x+1)); undo the lattice unit shift.
  return shift(s, -1);
}

Signal pointwise_product(const Signal& a, const Signal& b) {
  if (a.empty() || b.empty()) return Signal();
  long long lo = std::max(a.lo(), b.lo());
  long long hi = std::min(a.hi(), b.hi());
  if (hi < lo) return Signal();
  Eigen::Index n = hi - lo + 1;
  CArray v = a.values().segment(lo - a.lo(), n) * b.values().segment(lo - b.lo(), n);
  return Signal(lo, std::move(v), a.exact_integer() && b.exact_integer());
}

}  // namespace unif

// signal.hpp - Finitely supported complex-valued functions on Z.
//
// A Signal stores a dense block of values starting at `offset`; everything
// outside the stored range is identically zero. Two signals that agree as
// functions compare equal regardless of surrounding zero padding.
//
// The exact_integer flag marks signals whose stored values all lie in
// {-1, 0, +1}; norm powers of such signals are integers and the integer
// accumulation paths serve as the master oracles for the floating paths.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace unif {

using Complex = std::complex<double>;
using CArray = Eigen::ArrayXcd;

class Signal {
 public:
  Signal() = default;
  Signal(long long offset, CArray values, bool exact_integer = false);

  // 1 on [lo, hi] (inclusive), 0 elsewhere.
  static Signal indicator(long long lo, long long hi);
  // Indicator of an arbitrary finite set.
  static Signal from_set(const std::vector<long long>& xs);
  static Signal from_values(long long offset, const std::vector<Complex>& vs, bool exact_integer = false);

  bool empty() const { return values_.size() == 0; }
  long long offset() const { return offset_; }
  long long lo() const { return offset_; }
  long long hi() const { return offset_ + static_cast<long long>(values_.size()) - 1; }
  long long width() const { return static_cast<long long>(values_.size()); }
  const CArray& values() const { return values_; }
  bool exact_integer() const { return exact_; }

  Complex at(long long x) const {
    long long i = x - offset_;
    if (i < 0 || i >= static_cast<long long>(values_.size())) return Complex(0.0, 0.0);
    return values_[i];
  }

  Complex sum() const;
  double sup_norm() const;
  double l1_norm() const;
  double energy() const;  // sum |f|^2

  // Equality as functions on Z: exact comparison after trimming zeros.
  bool operator==(const Signal& o) const;
  bool operator!=(const Signal& o) const { return !(*this == o); }

  // Max pointwise |difference| against another signal.
  double max_abs_diff(const Signal& o) const;

  Signal scaled(Complex c) const;

 private:
  void trim();
  void refresh_exact_flag();

  long long offset_ = 0;
  CArray values_;
  bool exact_ = true;  // the zero signal is exact
};

// T_h-style shift: result(x) = f(x + h).
Signal shift(const Signal& f, long long h);

// Multiplicative derivative: result(x) = f(x+h) * conj(f(x)).
Signal mult_derivative(const Signal& f, long long h);

// Iterated multiplicative derivative over a tuple of shifts.
Signal mult_derivative(const Signal& f, const std::vector<long long>& hs);

// Asymmetric derivative: result(x) = f(x+h) * conj(f(x+hp)).
Signal asym_derivative(const Signal& f, long long h, long long hp);

// Restriction to the progression u + qZ: result(x) = f(u + q*x). 1 <= u <= q.
Signal subsample(const Signal& f, long long u, long long q);

// Lattice restriction: result(x) = f(q*x).
Signal lattice_restrict(const Signal& f, long long q);

// Pointwise product a(x) * b(x).
Signal pointwise_product(const Signal& a, const Signal& b);

}  // namespace unif

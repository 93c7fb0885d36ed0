// rational.hpp - Minimal exact rational on 64-bit integers.
//
// Used for the δ parameters and the triangular-weight mass identities,
// which are tested exactly. Not a general-purpose bignum rational.

#pragma once

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace unif {

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) { reduce(); }
  explicit Rational(long long n) : num(n), den(1) {}

  void reduce() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  // floor(this * m)
  long long floor_times(long long m) const {
    long long p = num * m;
    long long q = p / den;
    if (p % den != 0 && ((p < 0) != (den < 0))) --q;
    return q;
  }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

  Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  // Parses "p/q" or a decimal like "0.25".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    long long den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(std::stoll(digits), den);
  }
};

}  // namespace unif

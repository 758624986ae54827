#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace prkit {

/// Exact rational number. GMP keeps every result canonical
/// (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n/d", "n" or a finite decimal ("-0.25"). Throws prkit::Error.
Rational parse_rational(const std::string& text);

/// Always "n/d" in lowest terms with positive denominator.
std::string format_rational(const Rational& q);

double to_double(const Rational& q);

/// Nearest rational with denominator 2^bits.
Rational dyadic_round(double v, int bits);
Rational dyadic_round(const Rational& v, int bits);

/// Rational interval [lo, hi].
struct Interval {
  Rational lo, hi;

  Interval() = default;
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
  explicit Interval(const Rational& v) : lo(v), hi(v) {}

  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  /// +1 / -1 when strictly signed, 0 when the interval meets zero.
  int sign() const {
    if (sgn(lo) > 0) return 1;
    if (sgn(hi) < 0) return -1;
    return 0;
  }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& a, const Interval& b);

}  // namespace prkit

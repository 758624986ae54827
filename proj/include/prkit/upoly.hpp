#pragma once

#include <string>
#include <vector>

#include "prkit/rational.hpp"

namespace prkit {

/// Univariate polynomial with rational coefficients, index = exponent.
/// The coefficient vector never ends in a zero.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c);
  /// c * t^k
  static UPoly monomial(const Rational& c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const;
  Rational lead() const;

  Rational eval(const Rational& t) const;
  Interval eval(const Interval& t) const;
  UPoly derivative() const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Rational& s) const;
  UPoly operator-() const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Integer polynomial, index = exponent, no trailing zeros.
struct ZPoly {
  std::vector<Integer> c;

  ZPoly() = default;
  explicit ZPoly(std::vector<Integer> coeffs) : c(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Integer& lead() const { return c.back(); }
  void trim() {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  }
  bool operator==(const ZPoly& o) const { return c == o.c; }
};

namespace zp {

/// Clears denominators and removes the content (leading sign kept).
ZPoly from_rational(const UPoly& p);
UPoly to_rational(const ZPoly& p);

Integer content(const ZPoly& p);
ZPoly primitive(const ZPoly& p);
ZPoly derivative(const ZPoly& p);

/// Sign of p(q) computed exactly.
int sign_at(const ZPoly& p, const Rational& q);
Interval eval(const ZPoly& p, const Interval& t);

/// Pseudo-remainder lc(b)^k * a mod b with the multiplier's sign reported
/// through `multiplier_sign`.
ZPoly prem(const ZPoly& a, const ZPoly& b, int* multiplier_sign = nullptr);

/// Primitive gcd over Z[x] with a modular fast path for coprime inputs.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

/// Exact quotient a / b; throws if b does not divide a over Q.
ZPoly divide_exact(const ZPoly& a, const ZPoly& b);

/// p / gcd(p, p'), primitive.
ZPoly squarefree(const ZPoly& p);

/// p(x + 1)
ZPoly taylor_shift1(const ZPoly& p);

/// Number of sign changes in the coefficient list, zeros skipped.
int sign_variations(const ZPoly& p);

}  // namespace zp

}  // namespace prkit

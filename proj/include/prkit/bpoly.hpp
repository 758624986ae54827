#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prkit/rational.hpp"
#include "prkit/upoly.hpp"

namespace prkit {

/// Sparse bivariate polynomial over Q. Key (i, j) is the monomial x^i y^j.
class BPoly {
 public:
  using Terms = std::map<std::pair<int, int>, Rational>;

  BPoly() = default;
  explicit BPoly(Terms terms);
  static BPoly constant(const Rational& c);
  static BPoly monomial(const Rational& c, int i, int j);
  static BPoly x() { return monomial(Rational(1), 1, 0); }
  static BPoly y() { return monomial(Rational(1), 0, 1); }
  /// Embeds a univariate polynomial as a polynomial in x (or in y).
  static BPoly from_x(const UPoly& p);
  static BPoly from_y(const UPoly& p);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(int i, int j) const;
  int degree() const;
  int degree_x() const;
  int degree_y() const;

  Rational eval(const Rational& x, const Rational& y) const;
  Interval eval(const Interval& x, const Interval& y) const;
  double eval(double x, double y) const;

  BPoly dx() const;
  BPoly dy() const;

  /// f(a, y) as a polynomial in y.
  UPoly at_x(const Rational& a) const;
  /// f(x, b) as a polynomial in x.
  UPoly at_y(const Rational& b) const;
  /// Coefficients of f viewed in Q[x][y]: result[j] is the coefficient of y^j.
  std::vector<UPoly> coeffs_in_y() const;

  /// f(sx * x + tx, sy * y + ty)
  BPoly affine(const Rational& sx, const Rational& tx, const Rational& sy,
               const Rational& ty) const;
  BPoly swap_xy() const;
  /// Rescaled by a positive rational so the coefficients are coprime integers.
  BPoly primitive() const;
  Rational max_abs_coeff() const;

  BPoly operator+(const BPoly& o) const;
  BPoly operator-(const BPoly& o) const;
  BPoly operator*(const BPoly& o) const;
  BPoly operator*(const Rational& s) const;
  BPoly operator-() const;
  bool operator==(const BPoly& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

 private:
  void add_term(int i, int j, const Rational& c);
  Terms terms_;
};

/// Tight interval power (even powers never go negative).
Interval ipow(const Interval& t, int k);

/// Double-precision copy for fast raster evaluation.
struct DoublePoly {
  std::vector<std::vector<double>> cy;  // cy[j][i]: coefficient of x^i y^j
  explicit DoublePoly(const BPoly& f);
  double operator()(double x, double y) const;
};

}  // namespace prkit

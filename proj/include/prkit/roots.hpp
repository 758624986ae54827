#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "prkit/rational.hpp"
#include "prkit/upoly.hpp"

namespace prkit {

/// A real algebraic number: a root of a squarefree integer polynomial
/// located in an isolating interval. Either exact (lo == hi, rational) or
/// the open interval (lo, hi) holds exactly one root and the polynomial has
/// opposite nonzero signs at lo and hi. Refinement narrows the interval in
/// place; the denoted number never changes.
class AlgebraicReal {
 public:
  AlgebraicReal() : AlgebraicReal(Rational(0)) {}
  explicit AlgebraicReal(const Rational& exact);
  AlgebraicReal(std::shared_ptr<const ZPoly> poly, Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_exact() const { return lo_ == hi_; }
  Interval interval() const { return {lo_, hi_}; }
  Rational width() const { return hi_ - lo_; }
  double approx() const;
  /// Defining squarefree polynomial (x - q for exact values built from q).
  const ZPoly& poly() const { return *poly_; }
  std::shared_ptr<const ZPoly> poly_ptr() const { return poly_; }

  void bisect();
  void refine(const Rational& width);
  /// Refine until the interval is at most 2^-bits wide.
  void refine_bits(int bits);
  /// A rational inside the isolating interval (the value when exact).
  Rational representative() const;

  /// Sign of (this - q), refining as needed.
  int compare(const Rational& q);

 private:
  std::shared_ptr<const ZPoly> poly_;
  Rational lo_, hi_;
  int sign_lo_ = 0;
};

/// Exact three-way comparison; refines both operands as needed.
int compare(AlgebraicReal& a, AlgebraicReal& b);

struct IsolatedRoot {
  AlgebraicReal value;
  int multiplicity = 1;
};

/// One isolating interval per distinct real root inside `window`
/// (closed; default all reals), ascending, with multiplicities.
/// Throws Error("zero-polynomial") for the zero polynomial.
std::vector<IsolatedRoot> isolate_real_roots(const UPoly& q,
                                             const std::optional<Interval>& window = std::nullopt);

/// Roots of a squarefree integer polynomial in the closed window, no
/// multiplicity work. The returned numbers share one defining polynomial.
std::vector<AlgebraicReal> isolate_squarefree(const ZPoly& p,
                                              const std::optional<Interval>& window = std::nullopt);

/// Strict upper bound (a power of two) on the absolute value of all roots.
Rational root_bound(const ZPoly& p);

/// Sturm sequence p, p', -rem, ... with positive-content normalisation.
std::vector<ZPoly> sturm_sequence(const ZPoly& p);
/// Number of distinct real roots in (a, b].
int sturm_count(const std::vector<ZPoly>& seq, const Rational& a, const Rational& b);

}  // namespace prkit

#pragma once

#include <vector>

#include "prkit/bpoly.hpp"

namespace prkit {

enum class ConicSign { InteriorPositive, ExteriorPositive };

/// Axis-aligned ellipse a1 (x - cx)^2 + a2 (y - cy)^2 = r.
struct ConicSpec {
  Rational cx, cy;
  Rational a1 = 1, a2 = 1, r = 1;
  ConicSign sign = ConicSign::InteriorPositive;
};

/// r - a1 (x - cx)^2 - a2 (y - cy)^2, negated for the exterior-positive sign.
/// Throws Error("invalid-conic") unless a1, a2, r > 0.
BPoly conic(const ConicSpec& spec);

struct FitSample {
  Rational x, y;
  double value = 0;
  double weight = 1;
};

struct FitOptions {
  int degree = 2;
  double regularization = 0;
  /// Coefficients are rounded to multiples of 2^-rounding_bits times the
  /// largest coefficient magnitude (rounded to a power of two).
  int rounding_bits = 40;
};

struct FitResult {
  BPoly poly;
  /// sqrt(sum w (p(x, y) - value)^2) of the stored (rounded) polynomial.
  double residual = 0;
};

/// Weighted least squares over all monomials x^i y^j with i + j <= degree.
/// Throws Error("too-few-samples") or Error("rank-deficient") (the latter
/// only when regularization is zero).
FitResult fit_polynomial(const std::vector<FitSample>& samples, const FitOptions& opt);

}  // namespace prkit

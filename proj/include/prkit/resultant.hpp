#pragma once

#include <vector>

#include "prkit/bpoly.hpp"
#include "prkit/upoly.hpp"

namespace prkit {

/// Determinant of a square rational matrix (fraction-free Bareiss after
/// clearing row denominators).
Rational determinant(std::vector<std::vector<Rational>> m);

/// Sylvester matrix of f and g taken with the given formal degrees
/// (leading coefficients may vanish).
std::vector<std::vector<Rational>> sylvester_matrix(const UPoly& f, int df, const UPoly& g, int dg);

/// Resultant of two univariate polynomials with their actual degrees.
Rational resultant(const UPoly& f, const UPoly& g);

/// Res_y(f, g): eliminates y, result is a polynomial in x.
UPoly resultant_y(const BPoly& f, const BPoly& g);
/// Res_x(f, g): eliminates x, result is a polynomial in y.
UPoly resultant_x(const BPoly& f, const BPoly& g);

/// The polynomial through (xs[k], ys[k]); xs pairwise distinct.
UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

}  // namespace prkit

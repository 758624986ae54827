#pragma once

#include <vector>

#include "prkit/bpoly.hpp"
#include "prkit/roots.hpp"

namespace prkit {

/// Axis-aligned closed rational box.
struct Box {
  Rational xmin, xmax, ymin, ymax;
  bool contains(const Rational& x, const Rational& y) const {
    return xmin <= x && x <= xmax && ymin <= y && y <= ymax;
  }
};

struct SystemRoot {
  AlgebraicReal x, y;
  /// Jacobian of (f, g) proven nonsingular at the point.
  bool transverse = false;
  /// Existence proven by a Krawczyk test; otherwise accepted because the
  /// enclosure of (f, g) still met zero at the finest precision.
  bool certified = false;
};

struct SolveOptions {
  int max_bits = 80;
};

/// All common real zeros of f and g in the closed box, sorted by (x, y).
/// Throws Error("positive-dimensional") when f and g share a curve component.
std::vector<SystemRoot> solve_system(const BPoly& f, const BPoly& g, const Box& box,
                                     const SolveOptions& opt = {});

/// Same, over the whole plane (the box is derived from root bounds of the
/// two resultants).
std::vector<SystemRoot> solve_system_global(const BPoly& f, const BPoly& g,
                                            const SolveOptions& opt = {});

/// Krawczyk existence-and-uniqueness test for a zero of (f, g) in X x Y.
bool krawczyk(const BPoly& f, const BPoly& g, const Interval& X, const Interval& Y);

}  // namespace prkit

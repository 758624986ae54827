#pragma once

#include <string>
#include <vector>

#include "prkit/bpoly.hpp"
#include "prkit/roots.hpp"
#include "prkit/system.hpp"
#include "prkit/violation.hpp"

namespace prkit {

struct CurveSpec {
  std::string id;
  BPoly f;
};

/// The component of {f_j > 0 for all j} containing the basepoint, studied
/// inside a rational working box.
struct DomainSpec {
  std::vector<CurveSpec> curves;
  Rational bx, by;
  Box box;

  int curve_index(const std::string& id) const;
};

struct CurveReport {
  std::vector<Violation> violations;
  /// Singular points were searched in the whole plane (the singular system
  /// was zero-dimensional); otherwise only the box was certified.
  bool global = false;
  std::vector<std::string> notes;
};

/// f = f_x = f_y = 0 has no real solution in the box.
CurveReport validate_curve_nonsingular(const CurveSpec& c, const Box& box);

struct DomainReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
};

/// All checks of a refined algebraic domain, in order: non-singular curves,
/// positive basepoint, closure inside the box, every curve meets the
/// closure, transverse crossings, no triple points.
DomainReport validate_domain(const DomainSpec& spec);

enum class FoldKind { Definite, Indefinite, Unclassified };
const char* to_string(FoldKind k);

struct FoldPoint {
  AlgebraicReal x, y;
  std::string curve;
  FoldKind kind = FoldKind::Unclassified;
};

struct CrossingPoint {
  AlgebraicReal x, y;
  std::string curve_a, curve_b;
};

/// Crossings and projection folds on the closure of the selected component.
struct FSet {
  std::vector<CrossingPoint> crossings;
  std::vector<FoldPoint> folds;
};

/// Throws Error("invalid-domain") when validation fails and
/// Error("non-generic coincidence") for a fold lying on a crossing.
FSet compute_f_set(const DomainSpec& spec);

}  // namespace prkit

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "prkit/domain.hpp"
#include "prkit/vdigraph.hpp"

namespace prkit {

struct SweepOptions {
  /// Number of refinement levels tried at each critical value.
  int max_level = 6;
};

enum class CritKind { Fold, Crossing };

/// A fold of one curve (f = f_y = 0) or an intersection of two curves,
/// anywhere in the working box.
struct CritPoint {
  CritKind kind = CritKind::Fold;
  int a = -1, b = -1;  // curve indices; b < 0 for folds
  AlgebraicReal x, y;
  bool transverse = true;
};

struct FiberInterval {
  AlgebraicReal lo, hi;
  /// Curve ids realizing the endpoints ("box" for the working-box edge).
  std::string lo_curve, hi_curve;
  bool member = false;
};

struct SliceProfile {
  Rational t;
  std::vector<FiberInterval> intervals;
};

/// Poincaré-Reeb digraph with exact vertex values alongside the
/// interval certificates stored in the graph.
struct PRGraph {
  VDigraph graph;
  std::vector<AlgebraicReal> values;
};

/// Exact sweep over the critical x-values of an arrangement. Construction
/// does all the work; the accessors only read the result.
class Sweep {
 public:
  explicit Sweep(const DomainSpec& spec, const SweepOptions& opt = {});
  ~Sweep();
  Sweep(const Sweep&) = delete;
  Sweep& operator=(const Sweep&) = delete;

  const DomainSpec& spec() const;
  const std::vector<CritPoint>& crit_points() const;
  /// Basepoint component reaches the working-box boundary.
  bool touches_box() const;
  /// Indices of critical points lying on the closure of the component.
  std::vector<int> closure_points() const;
  /// Groups of critical points that could not be separated (coincident
  /// folds and crossings, triple points), restricted to the closure.
  std::vector<std::vector<int>> closure_clusters() const;
  /// Curves whose zero set meets the closure.
  std::vector<bool> curves_meeting_closure() const;
  FoldKind fold_kind(int crit) const;
  /// x-values of the closure points, ascending and distinct.
  std::vector<AlgebraicReal> closure_critical_values() const;
  /// Throws Error("invalid-domain") when the component reaches the box.
  PRGraph graph() const;
  SliceProfile slice(const Rational& t) const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

/// Convenience wrappers (validation is the caller's job).
std::vector<AlgebraicReal> critical_x_values(const DomainSpec& spec);
SliceProfile slice(const DomainSpec& spec, const Rational& t);
/// Validates first; throws Error("invalid-domain") on any violation.
PRGraph build_poincare_reeb(const DomainSpec& spec, const SweepOptions& opt = {});

/// Approximate PR graph from a resolution x resolution grid of cell centres.
/// Vertex values are column centres. Throws Error("basepoint-not-marked").
VDigraph raster_oracle(const DomainSpec& spec, int resolution);

/// Same raster machinery for any cell predicate.
VDigraph raster_graph(const Box& box, int resolution, double bx, double by,
                      const std::function<bool(double, double)>& inside);

}  // namespace prkit

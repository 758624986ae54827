#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "prkit/conic.hpp"
#include "prkit/domain.hpp"
#include "prkit/sweep.hpp"
#include "prkit/vdigraph.hpp"

namespace prkit {

using Point = std::pair<Rational, Rational>;

struct RealizationConfig {
  /// Half-width of the vertical windows around the vertex abscissae.
  /// Default: a quarter of the smallest gap between distinct abscissae.
  std::optional<Rational> eps1;
  /// Half-height of the neighbourhoods. Default: twice the largest
  /// vertical excursion of an incident edge inside its window.
  std::optional<Rational> eps2;
  /// Default eps2 / 2. Landing heights spread over [q - (eps2 - eps'), q + (eps2 - eps')].
  std::optional<Rational> eps_prime;
  /// Thickening radius. Default: first value of eps1 * {4/5, 3/5, 2/5, 1/4}
  /// whose thickening passes the topology check.
  std::optional<Rational> delta;
  /// Multiplies the candidate sizes of the excised circles and ellipses.
  Rational excision_scale = 1;
  /// Fitting degrees tried in order; entries above max_degree are skipped.
  std::vector<int> degree_schedule{4, 6, 8, 10};
  int max_degree = 10;
  /// Grid used for the numeric pre-screens.
  int raster_resolution = 480;
  /// Samples per axis of the least-squares fit.
  int fit_grid = 120;
  /// Stop after the thickening and report the piecewise result.
  bool piecewise = false;
  SweepOptions sweep;

  nlohmann::json to_json() const;
};

/// One straight piece of the rewired complex.
struct Segment {
  Point a, b;
  /// "edge" (clipped original polyline), "slant", "landing" or "stem".
  std::string role;
  /// Edge id for edge/slant/landing pieces, vertex id for stems.
  std::string owner;
  /// Rewired vertex the piece belongs to (empty for clipped edge pieces).
  std::string at;
};

struct Landing {
  std::string edge;
  Point clip;
  Rational height;
};

struct Neighborhood {
  std::string vertex;
  Rational p, q;
  Box box;
  /// Sorted by clip height.
  std::vector<Landing> left, right;
  Rational stem_lo, stem_hi;
};

struct FoldRecord {
  std::string vertex;
  FoldKind kind = FoldKind::Unclassified;
  Point at;
  /// Sign of (fold x - vertex x).
  int side = 0;
};

struct Parameters {
  Rational eps1, eps2, eps_prime, delta;
};

struct Excision {
  std::string id;
  /// "tip" or "pocket".
  std::string role;
  std::string vertex;
  ConicSpec conic;
};

struct RealizationArtifacts {
  Parameters params;
  std::vector<Neighborhood> neighborhoods;
  std::vector<Segment> vertical;
  std::vector<Segment> complex;
  std::vector<FoldRecord> inventory;
  /// Piece counts by role.
  nlohmann::json ledger;
  /// Raster PR graph of the thickened complex.
  VDigraph piecewise_graph;
  int fit_degree = 0;
  BPoly outer;
  /// Boundary components of the certified outer region (one plus its holes).
  int boundary_components = 0;
  std::vector<Excision> excisions;
  /// One entry per attempted step (delta, degree, candidate conics).
  nlohmann::json transcript = nlohmann::json::array();
};

struct Realization {
  /// Empty curve list in piecewise mode.
  DomainSpec domain;
  RealizationArtifacts artifacts;
  /// Exact PR graph of the result (piecewise mode: the raster graph).
  VDigraph graph;
  bool algebraic = false;
  bool verified = false;
  /// Why no candidate passed (empty when verified).
  std::string failure;
  /// Input vertex id -> domain vertex id on the normalized graphs.
  std::vector<std::pair<std::string, std::string>> witness;
};

/// Parameter defaults and feasibility. Throws Error("realize-parameters").
Parameters choose_parameters(const EmbeddedGraph& g, const RealizationConfig& cfg);

/// One segment {p} x [lowest y - eps2, highest y + eps2] per vertex abscissa p.
std::vector<Segment> vertical_segments(const EmbeddedGraph& g, const Parameters& prm);

/// Straight-line rewiring inside the vertex neighbourhoods; the remaining
/// edge polylines are clipped to the outside of the windows.
std::vector<Neighborhood> rewire(const EmbeddedGraph& g, const Parameters& prm);
/// Throws Error("embedding") when two pieces meet outside the prescribed
/// touch points.
std::vector<Segment> build_complex(const EmbeddedGraph& g, const Parameters& prm,
                                   const std::vector<Neighborhood>& nbhd);

/// Definite folds at the caps of degree-1 vertices, indefinite folds at the
/// tips of the pockets between consecutive landings.
std::vector<FoldRecord> fold_inventory(const EmbeddedGraph& g, const Parameters& prm,
                                       const std::vector<Neighborhood>& nbhd);

/// Euclidean distance from (x, y) to the complex.
double distance_to_complex(const std::vector<Segment>& cx, double x, double y);

/// Throws Error("invalid-graph") when the hypotheses fail and
/// Error("realize-parameters") for infeasible parameters. When no candidate
/// passes verification the result is returned unverified with a reason.
Realization realize(const EmbeddedGraph& g, const RealizationConfig& cfg = {});

nlohmann::json realization_report(const EmbeddedGraph& g, const Realization& r);

}  // namespace prkit

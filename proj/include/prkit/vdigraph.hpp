#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prkit/rational.hpp"
#include "prkit/violation.hpp"

namespace prkit {

struct VVertex {
  std::string id;
  /// Certificate interval for V (degenerate when V is rational).
  Interval value;
  /// Dense rank of V among all vertices; equal ranks mean equal values.
  int rank = 0;
  nlohmann::json provenance;
};

struct VEdge {
  std::string id;
  int src = 0, dst = 0;
  nlohmann::json provenance;
};

/// Finite directed multigraph with a value per vertex, edges oriented from
/// smaller to larger value.
struct VDigraph {
  std::vector<VVertex> vertices;
  std::vector<VEdge> edges;

  int add_vertex(std::string id, Interval value, int rank, nlohmann::json prov = nullptr);
  int add_edge(std::string id, int src, int dst, nlohmann::json prov = nullptr);
  /// Index of the vertex with this id or -1.
  int find(const std::string& id) const;
  int in_degree(int v) const;
  int out_degree(int v) const;
  /// Ranks from the value intervals: equal degenerate intervals tie, disjoint
  /// intervals are ordered. Throws Error("ambiguous-order") otherwise.
  void ranks_from_values();
  /// Invariant violations (edge against the value order, isolated vertex).
  std::vector<Violation> check() const;
};

/// Removes every vertex with exactly one incoming and one outgoing edge,
/// joining the two edges (ids joined by '+'). Ranks are re-densified.
VDigraph normalize(const VDigraph& g);

struct IsoOptions {
  /// Require the bijection to preserve the order (and ties) of values.
  bool check_order = true;
  /// Pairs whose value midpoints differ by at most this much, in either
  /// graph, are exempt from the order test (for approximate graphs).
  double order_tolerance = 0;
};

/// Vertex bijection g1 -> g2 preserving oriented edge multiplicities (and
/// value order when requested), or nullopt.
std::optional<std::vector<int>> find_isomorphism(const VDigraph& g1, const VDigraph& g2,
                                                 const IsoOptions& opt = {});
bool is_isomorphic(const VDigraph& g1, const VDigraph& g2, const IsoOptions& opt = {});
/// Isomorphism after normalizing both graphs; the order is compared on the
/// retained vertices only.
bool is_weakly_isomorphic(const VDigraph& g1, const VDigraph& g2, const IsoOptions& opt = {});

std::string to_dot(const VDigraph& g, const std::string& name = "G");

/// Planar graph with x-monotone polyline edges.
struct EVertex {
  std::string id;
  Rational x, y;
};

struct EEdge {
  std::string id;
  int src = 0, dst = 0;
  /// Interior breakpoints, ordered from src to dst.
  std::vector<std::pair<Rational, Rational>> via;
};

struct EmbeddedGraph {
  std::vector<EVertex> vertices;
  std::vector<EEdge> edges;

  int find(const std::string& id) const;
  /// src, via..., dst
  std::vector<std::pair<Rational, Rational>> polyline(const EEdge& e) const;
  int degree(int v) const;
};

/// Connectivity, embedding, strict x-monotonicity, no degree-2 vertex and
/// degree 1 at every local extremum of the x-coordinate.
std::vector<Violation> validate_theorem_hypotheses(const EmbeddedGraph& g);

/// V = x-coordinate, every edge oriented towards larger x.
VDigraph to_vdigraph(const EmbeddedGraph& g);

}  // namespace prkit

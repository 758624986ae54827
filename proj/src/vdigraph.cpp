#include "prkit/vdigraph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "prkit/error.hpp"

namespace prkit {

int VDigraph::add_vertex(std::string id, Interval value, int rank, nlohmann::json prov) {
  vertices.push_back({std::move(id), std::move(value), rank, std::move(prov)});
  return static_cast<int>(vertices.size()) - 1;
}

int VDigraph::add_edge(std::string id, int src, int dst, nlohmann::json prov) {
  edges.push_back({std::move(id), src, dst, std::move(prov)});
  return static_cast<int>(edges.size()) - 1;
}

int VDigraph::find(const std::string& id) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return static_cast<int>(i);
  return -1;
}

int VDigraph::in_degree(int v) const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(), [v](auto& e) { return e.dst == v; }));
}

int VDigraph::out_degree(int v) const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(), [v](auto& e) { return e.src == v; }));
}

void VDigraph::ranks_from_values() {
  const size_t n = vertices.size();
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto cmp = [&](size_t a, size_t b) {
    const Interval &u = vertices[a].value, &v = vertices[b].value;
    if (u.lo == u.hi && v.lo == v.hi && u.lo == v.lo) return 0;
    if (u.hi < v.lo || (u.hi == v.lo && (u.lo != u.hi || v.lo != v.hi))) return -1;
    if (v.hi < u.lo || (v.hi == u.lo && (u.lo != u.hi || v.lo != v.hi))) return 1;
    throw Error("ambiguous-order", "vertex values " + vertices[a].id + " and " + vertices[b].id +
                                       " cannot be ordered from their intervals");
  };
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return cmp(a, b) < 0; });
  int r = 0;
  for (size_t k = 0; k < n; ++k) {
    if (k > 0 && cmp(idx[k - 1], idx[k]) != 0) ++r;
    vertices[idx[k]].rank = r;
  }
}

std::vector<Violation> VDigraph::check() const {
  std::vector<Violation> out;
  std::vector<int> deg(vertices.size(), 0);
  for (const auto& e : edges) {
    ++deg[e.src];
    ++deg[e.dst];
    if (vertices[e.src].rank >= vertices[e.dst].rank)
      out.push_back({"edge-order", "edge " + e.id + " does not increase V", {e.id}, {}});
  }
  if (vertices.size() > 1)
    for (size_t v = 0; v < vertices.size(); ++v)
      if (deg[v] == 0) out.push_back({"isolated-vertex", "vertex has no edges", {vertices[v].id}, {}});
  return out;
}

namespace {

void densify_ranks(VDigraph& g) {
  std::set<int> used;
  for (auto& v : g.vertices) used.insert(v.rank);
  std::map<int, int> remap;
  int k = 0;
  for (int r : used) remap[r] = k++;
  for (auto& v : g.vertices) v.rank = remap[v.rank];
}

}  // namespace

VDigraph normalize(const VDigraph& g) {
  VDigraph h = g;
  for (;;) {
    int victim = -1;
    for (size_t v = 0; v < h.vertices.size(); ++v) {
      if (h.in_degree(static_cast<int>(v)) == 1 && h.out_degree(static_cast<int>(v)) == 1) {
        victim = static_cast<int>(v);
        break;
      }
    }
    if (victim < 0) break;
    auto in = std::find_if(h.edges.begin(), h.edges.end(), [&](auto& e) { return e.dst == victim; });
    auto out = std::find_if(h.edges.begin(), h.edges.end(), [&](auto& e) { return e.src == victim; });
    VEdge joined{in->id + "+" + out->id, in->src, out->dst, nullptr};
    std::vector<VEdge> keep;
    for (auto it = h.edges.begin(); it != h.edges.end(); ++it)
      if (it != in && it != out) keep.push_back(*it);
    keep.push_back(joined);
    h.edges = std::move(keep);
    h.vertices.erase(h.vertices.begin() + victim);
    for (auto& e : h.edges) {
      if (e.src > victim) --e.src;
      if (e.dst > victim) --e.dst;
    }
  }
  densify_ranks(h);
  return h;
}

std::optional<std::vector<int>> find_isomorphism(const VDigraph& g1, const VDigraph& g2,
                                                 const IsoOptions& opt) {
  const int n = static_cast<int>(g1.vertices.size());
  if (n != static_cast<int>(g2.vertices.size()) || g1.edges.size() != g2.edges.size()) return std::nullopt;
  auto counts = [](const VDigraph& g) {
    std::map<std::pair<int, int>, int> m;
    for (auto& e : g.edges) ++m[{e.src, e.dst}];
    return m;
  };
  auto c1 = counts(g1), c2 = counts(g2);
  auto mult = [](const std::map<std::pair<int, int>, int>& m, int a, int b) {
    auto it = m.find({a, b});
    return it == m.end() ? 0 : it->second;
  };
  std::vector<int> in1(n), out1(n), in2(n), out2(n);
  for (int v = 0; v < n; ++v) {
    in1[v] = g1.in_degree(v);
    out1[v] = g1.out_degree(v);
    in2[v] = g2.in_degree(v);
    out2[v] = g2.out_degree(v);
  }
  auto mid = [](const VVertex& v) { return Rational((v.value.lo + v.value.hi) / 2).get_d(); };
  auto order_ok = [&](int u1, int v1, int u2, int v2) {
    if (!opt.check_order) return true;
    if (opt.order_tolerance > 0 &&
        (std::abs(mid(g1.vertices[u1]) - mid(g1.vertices[v1])) <= opt.order_tolerance ||
         std::abs(mid(g2.vertices[u2]) - mid(g2.vertices[v2])) <= opt.order_tolerance))
      return true;
    auto s = [](int a, int b) { return (a > b) - (a < b); };
    return s(g1.vertices[u1].rank, g1.vertices[v1].rank) == s(g2.vertices[u2].rank, g2.vertices[v2].rank);
  };
  // Most constrained vertices first.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int da = in1[a] + out1[a], db = in1[b] + out1[b];
    if (da != db) return da > db;
    return g1.vertices[a].rank < g1.vertices[b].rank;
  });
  std::vector<int> phi(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> extend = [&](int k) {
    if (k == n) return true;
    int v = order[k];
    for (int w = 0; w < n; ++w) {
      if (used[w] || in1[v] != in2[w] || out1[v] != out2[w]) continue;
      if (mult(c1, v, v) != mult(c2, w, w)) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        int u = order[j], x = phi[u];
        ok = mult(c1, u, v) == mult(c2, x, w) && mult(c1, v, u) == mult(c2, w, x) && order_ok(u, v, x, w);
      }
      if (!ok) continue;
      phi[v] = w;
      used[w] = true;
      if (extend(k + 1)) return true;
      used[w] = false;
      phi[v] = -1;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return phi;
}

bool is_isomorphic(const VDigraph& g1, const VDigraph& g2, const IsoOptions& opt) {
  return find_isomorphism(g1, g2, opt).has_value();
}

bool is_weakly_isomorphic(const VDigraph& g1, const VDigraph& g2, const IsoOptions& opt) {
  return is_isomorphic(normalize(g1), normalize(g2), opt);
}

std::string to_dot(const VDigraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (const auto& v : g.vertices) {
    double val = Rational((v.value.lo + v.value.hi) / 2).get_d();
    os << "  \"" << v.id << "\" [label=\"" << v.id << "\\nV=" << val << "\"];\n";
  }
  for (const auto& e : g.edges)
    os << "  \"" << g.vertices[e.src].id << "\" -> \"" << g.vertices[e.dst].id << "\" [label=\"" << e.id
       << "\"];\n";
  os << "}\n";
  return os.str();
}

int EmbeddedGraph::find(const std::string& id) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return static_cast<int>(i);
  return -1;
}

std::vector<std::pair<Rational, Rational>> EmbeddedGraph::polyline(const EEdge& e) const {
  std::vector<std::pair<Rational, Rational>> p;
  p.emplace_back(vertices[e.src].x, vertices[e.src].y);
  for (auto& q : e.via) p.push_back(q);
  p.emplace_back(vertices[e.dst].x, vertices[e.dst].y);
  return p;
}

int EmbeddedGraph::degree(int v) const {
  int d = 0;
  for (auto& e : edges) d += (e.src == v) + (e.dst == v);
  return d;
}

namespace {

using Pt = std::pair<Rational, Rational>;

int orient(const Pt& a, const Pt& b, const Pt& c) {
  Rational d = (b.first - a.first) * (c.second - a.second) - (b.second - a.second) * (c.first - a.first);
  return sgn(d);
}

bool on_segment(const Pt& a, const Pt& b, const Pt& p) {
  return orient(a, b, p) == 0 && std::min(a.first, b.first) <= p.first && p.first <= std::max(a.first, b.first) &&
         std::min(a.second, b.second) <= p.second && p.second <= std::max(a.second, b.second);
}

// Intersection of closed segments: none, one point, or an overlap.
enum class Meet { None, Point, Overlap };

Meet intersect(const Pt& a, const Pt& b, const Pt& c, const Pt& d, Pt& where) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 == 0 && o2 == 0) {
    // collinear
    std::vector<Pt> touch;
    for (const Pt& p : {c, d})
      if (on_segment(a, b, p)) touch.push_back(p);
    for (const Pt& p : {a, b})
      if (on_segment(c, d, p)) touch.push_back(p);
    if (touch.empty()) return Meet::None;
    std::sort(touch.begin(), touch.end());
    touch.erase(std::unique(touch.begin(), touch.end()), touch.end());
    if (touch.size() > 1) return Meet::Overlap;
    where = touch[0];
    return Meet::Point;
  }
  if (o1 * o2 > 0 || o3 * o4 > 0) return Meet::None;
  // proper or endpoint-touching crossing
  Rational den = (b.first - a.first) * (d.second - c.second) - (b.second - a.second) * (d.first - c.first);
  Rational t = ((c.first - a.first) * (d.second - c.second) - (c.second - a.second) * (d.first - c.first)) / den;
  where = {a.first + t * (b.first - a.first), a.second + t * (b.second - a.second)};
  return Meet::Point;
}

WitnessPoint wp(const Pt& p) { return {Interval(p.first), Interval(p.second)}; }

}  // namespace

std::vector<Violation> validate_theorem_hypotheses(const EmbeddedGraph& g) {
  std::vector<Violation> out;
  const int n = static_cast<int>(g.vertices.size());
  if (n == 0) {
    out.push_back({"empty-graph", "graph has no vertices", {}, {}});
    return out;
  }
  // connectivity
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> root = [&](int v) { return comp[v] == v ? v : comp[v] = root(comp[v]); };
  for (auto& e : g.edges) comp[root(e.src)] = root(e.dst);
  std::set<int> roots;
  for (int v = 0; v < n; ++v) roots.insert(root(v));
  if (roots.size() > 1) out.push_back({"disconnected", "graph is not connected", {}, {}});

  // strict x-monotonicity
  std::vector<bool> monotone(g.edges.size(), true);
  for (size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    auto pl = g.polyline(e);
    int dir = 0;
    for (size_t i = 0; i + 1 < pl.size(); ++i) {
      int s = sgn(pl[i + 1].first - pl[i].first);
      if (s == 0 || (dir != 0 && s != dir)) {
        monotone[k] = false;
        break;
      }
      dir = s;
    }
    if (!monotone[k])
      out.push_back({"non-monotone-edge", "edge is not strictly x-monotone", {e.id}, {}});
  }

  // embedding: pieces may only meet at a shared vertex
  for (size_t a = 0; a < g.edges.size(); ++a) {
    auto pa = g.polyline(g.edges[a]);
    for (int v = 0; v < n; ++v) {
      if (v == g.edges[a].src || v == g.edges[a].dst) continue;
      Pt p{g.vertices[v].x, g.vertices[v].y};
      for (size_t i = 0; i + 1 < pa.size(); ++i)
        if (on_segment(pa[i], pa[i + 1], p)) {
          out.push_back({"embedding", "edge passes through a vertex", {g.edges[a].id, g.vertices[v].id}, {wp(p)}});
          break;
        }
    }
    for (size_t b = a + 1; b < g.edges.size(); ++b) {
      auto pb = g.polyline(g.edges[b]);
      std::set<Pt> shared;
      for (int v : {g.edges[a].src, g.edges[a].dst})
        if (v == g.edges[b].src || v == g.edges[b].dst) shared.insert({g.vertices[v].x, g.vertices[v].y});
      bool bad = false;
      Pt where;
      for (size_t i = 0; i + 1 < pa.size() && !bad; ++i)
        for (size_t j = 0; j + 1 < pb.size() && !bad; ++j) {
          Meet m = intersect(pa[i], pa[i + 1], pb[j], pb[j + 1], where);
          if (m == Meet::Overlap) {
            bad = true;
            where = pa[i];
          } else if (m == Meet::Point && !shared.count(where)) {
            bad = true;
          }
        }
      if (bad)
        out.push_back({"embedding", "edges intersect away from a shared vertex",
                       {g.edges[a].id, g.edges[b].id}, {wp(where)}});
    }
  }

  // degree conditions
  for (int v = 0; v < n; ++v) {
    int d = g.degree(v);
    const auto& gv = g.vertices[v];
    if (d == 0) {
      if (n > 1) out.push_back({"isolated-vertex", "vertex has no edges", {gv.id}, {wp({gv.x, gv.y})}});
      else out.push_back({"extremum-degree", "single vertex without edges", {gv.id}, {wp({gv.x, gv.y})}});
      continue;
    }
    if (d == 2) out.push_back({"degree-2", "vertex has degree 2", {gv.id}, {wp({gv.x, gv.y})}});
    int left = 0, right = 0;
    for (size_t k = 0; k < g.edges.size(); ++k) {
      const auto& e = g.edges[k];
      if (e.src != v && e.dst != v) continue;
      auto pl = g.polyline(e);
      // the breakpoint next to v on this edge
      for (int end = 0; end < 2; ++end) {
        int at = end == 0 ? e.src : e.dst;
        if (at != v) continue;
        const Pt& nb = end == 0 ? pl[1] : pl[pl.size() - 2];
        int s = sgn(nb.first - gv.x);
        if (s < 0) ++left;
        if (s > 0) ++right;
      }
    }
    if ((left == 0 || right == 0) && d != 1)
      out.push_back({"extremum-degree", "local extremum of the x-coordinate at a vertex of degree " +
                                            std::to_string(d),
                     {gv.id}, {wp({gv.x, gv.y})}});
  }
  return out;
}

VDigraph to_vdigraph(const EmbeddedGraph& g) {
  VDigraph h;
  for (const auto& v : g.vertices) h.add_vertex(v.id, Interval(v.x), 0, nlohmann::json{{"y", format_rational(v.y)}});
  h.ranks_from_values();
  for (const auto& e : g.edges) {
    bool forward = g.vertices[e.src].x < g.vertices[e.dst].x;
    h.add_edge(e.id, forward ? e.src : e.dst, forward ? e.dst : e.src);
  }
  return h;
}

}  // namespace prkit

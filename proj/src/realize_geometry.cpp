#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "prkit/error.hpp"
#include "prkit/realize.hpp"

namespace prkit {

namespace {

// Polyline y at abscissa t (t inside the x-range).
Rational polyline_y(const std::vector<Point>& pl, const Rational& t) {
  for (size_t i = 0; i + 1 < pl.size(); ++i) {
    const auto& [x0, y0] = pl[i];
    const auto& [x1, y1] = pl[i + 1];
    if (x0 <= t && t <= x1) {
      Rational r = y0 + (y1 - y0) * (t - x0) / (x1 - x0);
      r.canonicalize();
      return r;
    }
  }
  throw Error("internal", "abscissa outside the polyline");
}

// Polyline restricted to [a, b].
std::vector<Point> clip_polyline(const std::vector<Point>& pl, const Rational& a, const Rational& b) {
  std::vector<Point> out{{a, polyline_y(pl, a)}};
  for (auto& pt : pl)
    if (pt.first > a && pt.first < b) out.push_back(pt);
  out.push_back({b, polyline_y(pl, b)});
  return out;
}

// Closed segment against closed box, exactly (Liang-Barsky on rationals).
bool segment_meets_box(const Point& a, const Point& b, const Box& box) {
  Rational t0 = 0, t1 = 1;
  const Rational dx = b.first - a.first, dy = b.second - a.second;
  auto clip = [&](const Rational& p, const Rational& q) {
    // p * t <= q
    if (sgn(p) == 0) return sgn(q) >= 0;
    Rational r = q / p;
    if (sgn(p) < 0) {
      if (r > t1) return false;
      if (r > t0) t0 = r;
    } else {
      if (r < t0) return false;
      if (r < t1) t1 = r;
    }
    return true;
  };
  return clip(-dx, a.first - box.xmin) && clip(dx, box.xmax - a.first) && clip(-dy, a.second - box.ymin) &&
         clip(dy, box.ymax - a.second) && t0 <= t1;
}

bool rewired(const EmbeddedGraph& g, int v) { return g.degree(v) >= 3; }

struct Incident {
  int edge;
  bool right;  // the edge leaves towards larger x
};

std::vector<Incident> incident(const EmbeddedGraph& g, int v) {
  std::vector<Incident> out;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const auto& E = g.edges[e];
    if (E.src != v && E.dst != v) continue;
    const int w = E.src == v ? E.dst : E.src;
    out.push_back({static_cast<int>(e), g.vertices[w].x > g.vertices[v].x});
  }
  return out;
}

// Edge polylines run from smaller to larger x.
std::vector<Point> oriented_polyline(const EmbeddedGraph& g, const EEdge& e) {
  auto pl = g.polyline(e);
  if (pl.front().first > pl.back().first) std::reverse(pl.begin(), pl.end());
  return pl;
}

Rational cross(const Point& o, const Point& a, const Point& b) {
  Rational r = (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  return r;
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  return sgn(cross(a, b, p)) == 0 && std::min(a.first, b.first) <= p.first && p.first <= std::max(a.first, b.first) &&
         std::min(a.second, b.second) <= p.second && p.second <= std::max(a.second, b.second);
}

// Common points of two closed segments: none, exactly one (returned), or infinitely many.
enum class Meet { None, Point, Overlap };
Meet meet(const Segment& s, const Segment& t, Point& at) {
  const int d1 = sgn(cross(s.a, s.b, t.a)), d2 = sgn(cross(s.a, s.b, t.b));
  const int d3 = sgn(cross(t.a, t.b, s.a)), d4 = sgn(cross(t.a, t.b, s.b));
  if (d1 == 0 && d2 == 0) {
    std::vector<Point> common;
    for (auto* p : {&t.a, &t.b})
      if (on_segment(*p, s.a, s.b)) common.push_back(*p);
    for (auto* p : {&s.a, &s.b})
      if (on_segment(*p, t.a, t.b)) common.push_back(*p);
    std::sort(common.begin(), common.end());
    common.erase(std::unique(common.begin(), common.end()), common.end());
    if (common.empty()) return Meet::None;
    if (common.size() > 1) return Meet::Overlap;
    at = common.front();
    return Meet::Point;
  }
  if (d1 * d2 > 0 || d3 * d4 > 0) return Meet::None;
  // Proper or endpoint crossing: solve along s.
  const Rational den = cross({0, 0}, {s.b.first - s.a.first, s.b.second - s.a.second},
                             {t.b.first - t.a.first, t.b.second - t.a.second});
  const Rational u = cross(s.a, t.a, t.b) / den;
  at = {s.a.first + u * (s.b.first - s.a.first), s.a.second + u * (s.b.second - s.a.second)};
  at.first.canonicalize();
  at.second.canonicalize();
  return Meet::Point;
}

bool is_end(const Point& p, const Segment& s) { return p == s.a || p == s.b; }

void check_embedding(const std::vector<Segment>& cx) {
  for (size_t i = 0; i < cx.size(); ++i)
    for (size_t j = i + 1; j < cx.size(); ++j) {
      const auto &s = cx[i], &t = cx[j];
      Point at;
      Meet m = meet(s, t, at);
      if (m == Meet::None) continue;
      bool ok = false;
      if (m == Meet::Point) {
        if (s.owner == t.owner && s.role != "stem" && t.role != "stem")
          ok = is_end(at, s) && is_end(at, t);
        else if (!s.at.empty() && s.at == t.at) {
          // Inside one neighbourhood, landings end on the stem line.
          if (s.role == "stem") ok = t.role == "landing" && is_end(at, t);
          else if (t.role == "stem") ok = s.role == "landing" && is_end(at, s);
          else ok = s.role == "landing" && t.role == "landing" && is_end(at, s) && is_end(at, t);
        }
      }
      if (!ok)
        throw Error("embedding", s.role + " piece of " + s.owner + " meets " + t.role + " piece of " + t.owner +
                                     " at (" + at.first.get_str() + ", " + at.second.get_str() + ")");
    }
}

}  // namespace

Parameters choose_parameters(const EmbeddedGraph& g, const RealizationConfig& cfg) {
  auto vs = validate_theorem_hypotheses(g);
  if (!vs.empty()) throw Error("invalid-graph", vs.front().tag + ": " + vs.front().message);
  std::set<Rational> xs;
  for (auto& v : g.vertices) xs.insert(v.x);
  if (xs.size() < 2) throw Error("invalid-graph", "the graph needs two distinct abscissae");
  Rational gap = -1;
  for (auto it = std::next(xs.begin()); it != xs.end(); ++it) {
    Rational d = *it - *std::prev(it);
    if (gap < 0 || d < gap) gap = d;
  }
  Parameters prm;
  prm.eps1 = cfg.eps1 ? *cfg.eps1 : Rational(gap / 4);
  if (sgn(prm.eps1) <= 0 || prm.eps1 * 2 >= gap)
    throw Error("realize-parameters", "eps1 must lie in (0, half the smallest abscissa gap)");

  Rational reach = 0;
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    if (!rewired(g, static_cast<int>(v))) continue;
    const auto& V = g.vertices[v];
    for (auto inc : incident(g, static_cast<int>(v))) {
      auto pl = oriented_polyline(g, g.edges[inc.edge]);
      Rational lo = inc.right ? V.x : Rational(V.x - prm.eps1);
      Rational hi = inc.right ? Rational(V.x + prm.eps1) : V.x;
      for (auto& pt : clip_polyline(pl, lo, hi)) reach = std::max(reach, Rational(abs(pt.second - V.y)));
    }
  }
  prm.eps2 = cfg.eps2 ? *cfg.eps2 : std::max(Rational(2 * reach), prm.eps1);
  if (prm.eps2 <= reach)
    throw Error("realize-parameters", "eps2 = " + prm.eps2.get_str() +
                                          " does not exceed the vertical excursion " + reach.get_str() +
                                          " of the incident edges");
  prm.eps_prime = cfg.eps_prime ? *cfg.eps_prime : Rational(prm.eps2 / 2);
  if (sgn(prm.eps_prime) <= 0 || prm.eps_prime >= prm.eps2)
    throw Error("realize-parameters", "eps' must lie in (0, eps2)");
  prm.delta = cfg.delta ? *cfg.delta : Rational(0);

  // Each neighbourhood may only meet its own vertex and incident edges.
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    if (!rewired(g, static_cast<int>(v))) continue;
    const auto& V = g.vertices[v];
    Box nb{V.x - prm.eps1, V.x + prm.eps1, V.y - prm.eps2, V.y + prm.eps2};
    for (size_t w = 0; w < g.vertices.size(); ++w)
      if (w != v && nb.contains(g.vertices[w].x, g.vertices[w].y))
        throw Error("realize-parameters", "the neighbourhood of " + V.id + " contains vertex " +
                                              g.vertices[w].id + "; choose smaller eps1 or eps2");
    for (auto& e : g.edges) {
      if (e.src == static_cast<int>(v) || e.dst == static_cast<int>(v)) continue;
      auto pl = g.polyline(e);
      for (size_t i = 0; i + 1 < pl.size(); ++i)
        if (segment_meets_box(pl[i], pl[i + 1], nb))
          throw Error("realize-parameters", "the neighbourhood of " + V.id + " meets edge " + e.id +
                                                "; choose smaller eps1 or eps2");
    }
  }
  return prm;
}

std::vector<Segment> vertical_segments(const EmbeddedGraph& g, const Parameters& prm) {
  std::map<Rational, std::pair<Rational, Rational>> span;
  for (auto& v : g.vertices) {
    auto [it, fresh] = span.try_emplace(v.x, v.y, v.y);
    if (!fresh) {
      it->second.first = std::min(it->second.first, v.y);
      it->second.second = std::max(it->second.second, v.y);
    }
  }
  std::vector<Segment> out;
  for (auto& [x, r] : span)
    out.push_back({{x, r.first - prm.eps2}, {x, r.second + prm.eps2}, "vertical", "", ""});
  return out;
}

std::vector<Neighborhood> rewire(const EmbeddedGraph& g, const Parameters& prm) {
  std::vector<Neighborhood> out;
  const Rational lh = prm.eps2 - prm.eps_prime;
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    if (!rewired(g, static_cast<int>(v))) continue;
    const auto& V = g.vertices[v];
    Neighborhood nb;
    nb.vertex = V.id;
    nb.p = V.x;
    nb.q = V.y;
    nb.box = {V.x - prm.eps1, V.x + prm.eps1, V.y - prm.eps2, V.y + prm.eps2};
    for (auto inc : incident(g, static_cast<int>(v))) {
      const auto& e = g.edges[inc.edge];
      auto pl = oriented_polyline(g, e);
      Rational cx = inc.right ? Rational(V.x + prm.eps1) : Rational(V.x - prm.eps1);
      (inc.right ? nb.right : nb.left).push_back({e.id, {cx, polyline_y(pl, cx)}, 0});
    }
    for (auto* side : {&nb.left, &nb.right})
      std::sort(side->begin(), side->end(),
                [](const Landing& a, const Landing& b) { return a.clip.second < b.clip.second; });
    // With two or more landings on both sides the right ones are nested
    // strictly inside the left span, at heights and pocket midpoints that
    // never coincide with left ones.
    const bool nested = nb.left.size() >= 2 && nb.right.size() >= 2;
    auto spread = [&](std::vector<Landing>& side, const Rational& centre, const Rational& half) {
      const size_t n = side.size();
      for (size_t j = 0; j < n; ++j) {
        Rational h = n == 1 ? centre
                            : centre - half + 2 * half * Rational(static_cast<long>(j), static_cast<long>(n - 1));
        h.canonicalize();
        side[j].height = h;
      }
    };
    spread(nb.left, V.y, lh);
    spread(nb.right, V.y, lh);
    if (nested) {
      auto clash = [&] {
        for (size_t i = 0; i < nb.left.size(); ++i)
          for (size_t j = 0; j < nb.right.size(); ++j) {
            if (nb.left[i].height == nb.right[j].height) return true;
            if (i + 1 < nb.left.size() && j + 1 < nb.right.size() &&
                nb.left[i].height + nb.left[i + 1].height == nb.right[j].height + nb.right[j + 1].height)
              return true;
          }
        return false;
      };
      for (long k = 1; k < 16; ++k) {
        spread(nb.right, V.y + lh * Rational(k, 32), lh / 2);
        if (!clash()) break;
      }
    }
    nb.stem_lo = nb.stem_hi = V.y;
    for (auto* side : {&nb.left, &nb.right})
      for (auto& l : *side) {
        nb.stem_lo = std::min(nb.stem_lo, l.height);
        nb.stem_hi = std::max(nb.stem_hi, l.height);
      }
    out.push_back(nb);
  }
  return out;
}

std::vector<Segment> build_complex(const EmbeddedGraph& g, const Parameters& prm,
                                   const std::vector<Neighborhood>& nbhd) {
  std::vector<Segment> out;
  for (auto& e : g.edges) {
    auto pl = oriented_polyline(g, e);
    int lv = pl.front() == Point{g.vertices[e.src].x, g.vertices[e.src].y} ? e.src : e.dst;
    int rv = lv == e.src ? e.dst : e.src;
    Rational a = pl.front().first;
    Rational b = pl.back().first;
    if (rewired(g, lv)) a += prm.eps1;
    if (rewired(g, rv)) b -= prm.eps1;
    auto cl = clip_polyline(pl, a, b);
    for (size_t i = 0; i + 1 < cl.size(); ++i) out.push_back({cl[i], cl[i + 1], "edge", e.id, ""});
  }
  const Rational half = prm.eps1 / 2;
  for (auto& nb : nbhd) {
    for (auto& l : nb.left) {
      out.push_back({l.clip, {nb.p - half, l.height}, "slant", l.edge, nb.vertex});
      out.push_back({{nb.p - half, l.height}, {nb.p, l.height}, "landing", l.edge, nb.vertex});
    }
    for (auto& l : nb.right) {
      out.push_back({{nb.p, l.height}, {nb.p + half, l.height}, "landing", l.edge, nb.vertex});
      out.push_back({{nb.p + half, l.height}, l.clip, "slant", l.edge, nb.vertex});
    }
    if (nb.stem_lo < nb.stem_hi)
      out.push_back({{nb.p, nb.stem_lo}, {nb.p, nb.stem_hi}, "stem", nb.vertex, nb.vertex});
  }
  check_embedding(out);
  return out;
}

std::vector<FoldRecord> fold_inventory(const EmbeddedGraph& g, const Parameters& prm,
                                       const std::vector<Neighborhood>& nbhd) {
  std::vector<FoldRecord> out;
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    if (g.degree(static_cast<int>(v)) != 1) continue;
    const auto& V = g.vertices[v];
    bool right = !incident(g, static_cast<int>(v)).front().right;
    // A vertex whose edge leaves to the right is a leftmost point.
    int side = right ? 1 : -1;
    out.push_back({V.id, FoldKind::Definite, {V.x + side * prm.delta, V.y}, side});
  }
  for (auto& nb : nbhd) {
    for (int s : {-1, 1}) {
      const auto& lands = s < 0 ? nb.left : nb.right;
      for (size_t j = 0; j + 1 < lands.size(); ++j) {
        Rational mid = (lands[j].height + lands[j + 1].height) / 2;
        mid.canonicalize();
        out.push_back({nb.vertex, FoldKind::Indefinite, {nb.p + s * prm.delta, mid}, s});
      }
    }
  }
  return out;
}

double distance_to_complex(const std::vector<Segment>& cx, double x, double y) {
  double best = INFINITY;
  for (auto& s : cx) {
    const double ax = s.a.first.get_d(), ay = s.a.second.get_d();
    const double dx = s.b.first.get_d() - ax, dy = s.b.second.get_d() - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((x - ax) * dx + (y - ay) * dy) / len2 : 0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(x - ax - t * dx, y - ay - t * dy));
  }
  return best;
}

}  // namespace prkit

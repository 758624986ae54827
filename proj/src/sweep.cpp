#include "prkit/sweep.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "prkit/error.hpp"

namespace prkit {

namespace {

Rational pow2(int e) {
  Rational r(1);
  if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), e);
  else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -e);
  return r;
}

// A rational strictly between a < b.
Rational between(AlgebraicReal& a, AlgebraicReal& b) {
  while (!(a.hi() < b.lo())) {
    if (a.is_exact() && b.is_exact()) break;
    if (!a.is_exact()) a.bisect();
    if (!b.is_exact()) b.bisect();
  }
  return (a.hi() + b.lo()) / 2;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int v) { return p[v] == v ? v : p[v] = find(p[v]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

struct Element {
  enum Kind { ZoneBottom, ZoneTop, Crit, Tube } kind = Crit;
  Rational ylo, yhi;
  std::vector<int> crits;
  int curve = -1;
  std::map<int, std::pair<int, int>> counts;  // curve -> roots on (left, right) wall
  bool cluster() const { return crits.size() > 1; }
};

struct WallInterval {
  AlgebraicReal lo, hi;
  int lo_curve = -1, hi_curve = -1;  // -1: box edge
  int item = -1;
  int cls = -1;
};

struct Event {
  AlgebraicReal c;
  std::vector<int> crits;
  Rational hmax;  // bound on the strip half-width from neighbour separation
  Rational tl, tr;
  std::vector<Element> elems;  // sorted by y, zones first and last
  std::vector<char> gap_pos;   // gap k lies between elems[k] and elems[k+1]
  std::vector<WallInterval> left, right;
  int nclass = 0;
  std::vector<int> item_class;  // gaps first, then elements; -1 when not in the closure
  std::vector<char> class_outside;
  std::vector<std::vector<int>> class_crits;
  int level = 0;
  int gaps() const { return static_cast<int>(elems.size()) - 1; }
};

struct SlabEdge {
  int slab, index;
  int from, to;  // global node ids, 0 = outside
  int lo_curve_l, hi_curve_l, lo_curve_r, hi_curve_r;
};

}  // namespace

struct Sweep::Impl {
  DomainSpec spec;
  SweepOptions opt;
  std::vector<BPoly> fx, fy;
  std::vector<CritPoint> crits;
  std::vector<Event> events;
  std::vector<int> crit_event, crit_elem;
  std::vector<int> node_offset;  // first global node id per event
  int nnodes = 1;
  std::vector<SlabEdge> slab_edges;
  std::vector<char> in_comp;  // per global node
  int base_node = 0;

  Impl(const DomainSpec& s, const SweepOptions& o);
  void collect_crit_points();
  void build_events();
  bool analyze(Event& ev, int level);
  void link();
  int locate_basepoint();

  int ncurves() const { return static_cast<int>(spec.curves.size()); }
  const BPoly& f(int j) const { return spec.curves[j].f; }
  int global(int ev, int cls) const { return cls < 0 ? -1 : node_offset[ev] + cls; }
  bool positive_at(const Rational& x, const Rational& y) const {
    for (int j = 0; j < ncurves(); ++j)
      if (sgn(f(j).eval(x, y)) <= 0) return false;
    return true;
  }
  // Roots of all curves on the vertical line x = t inside the box, merged and sorted.
  struct LineRoot {
    AlgebraicReal y;
    int curve;
    int mult;
  };
  std::vector<LineRoot> line_roots(const Rational& t) const;
  std::vector<WallInterval> positive_intervals(const Rational& t, std::vector<LineRoot>& roots) const;
};

std::vector<Sweep::Impl::LineRoot> Sweep::Impl::line_roots(const Rational& t) const {
  std::vector<LineRoot> out;
  const Box& b = spec.box;
  for (int j = 0; j < ncurves(); ++j) {
    UPoly q = f(j).at_x(t);
    if (q.is_zero()) throw Error("vertical-component", "curve " + spec.curves[j].id + " contains a vertical line");
    for (auto& r : isolate_real_roots(q, Interval(b.ymin, b.ymax))) {
      if (r.value.compare(b.ymin) == 0 || r.value.compare(b.ymax) == 0) continue;
      out.push_back({r.value, j, r.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(), [](const LineRoot& a, const LineRoot& b) {
    AlgebraicReal x = a.y, y = b.y;
    return compare(x, y) < 0;
  });
  return out;
}

std::vector<WallInterval> Sweep::Impl::positive_intervals(const Rational& t, std::vector<LineRoot>& roots) const {
  std::vector<WallInterval> out;
  const Box& b = spec.box;
  const size_t n = roots.size();
  for (size_t k = 0; k <= n; ++k) {
    AlgebraicReal lo = k == 0 ? AlgebraicReal(b.ymin) : roots[k - 1].y;
    AlgebraicReal hi = k == n ? AlgebraicReal(b.ymax) : roots[k].y;
    Rational mid = between(lo, hi);
    if (k > 0) roots[k - 1].y = lo;
    if (k < n) roots[k].y = hi;
    if (!positive_at(t, mid)) continue;
    WallInterval w;
    w.lo = lo;
    w.hi = hi;
    w.lo_curve = k == 0 ? -1 : roots[k - 1].curve;
    w.hi_curve = k == n ? -1 : roots[k].curve;
    w.item = static_cast<int>(k);  // temporarily: index of the lower root + 1
    out.push_back(std::move(w));
  }
  return out;
}

void Sweep::Impl::collect_crit_points() {
  const Box& box = spec.box;
  for (int j = 0; j < ncurves(); ++j) {
    std::vector<SystemRoot> sol;
    try {
      sol = solve_system(f(j), fy[j], box);
    } catch (const Error& e) {
      if (e.tag() != "positive-dimensional") throw;
      throw Error("vertical-component", "curve " + spec.curves[j].id + " has a vertical line component");
    }
    for (auto& s : sol) crits.push_back({CritKind::Fold, j, -1, s.x, s.y, s.transverse});
  }
  for (int j = 0; j < ncurves(); ++j)
    for (int k = j + 1; k < ncurves(); ++k) {
      std::vector<SystemRoot> sol;
      try {
        sol = solve_system(f(j), f(k), box);
      } catch (const Error& e) {
        if (e.tag() != "positive-dimensional") throw;
        throw Error("shared-component",
                    "curves " + spec.curves[j].id + " and " + spec.curves[k].id + " share a component");
      }
      for (auto& s : sol) crits.push_back({CritKind::Crossing, j, k, s.x, s.y, s.transverse});
    }
}

void Sweep::Impl::build_events() {
  const Box& box = spec.box;
  std::vector<std::pair<AlgebraicReal, int>> xs;  // (value, crit index or -1)
  for (size_t i = 0; i < crits.size(); ++i) xs.emplace_back(crits[i].x, static_cast<int>(i));
  for (int j = 0; j < ncurves(); ++j)
    for (const Rational& edge : {box.ymin, box.ymax}) {
      UPoly q = f(j).at_y(edge);
      if (q.is_zero()) continue;
      for (auto& r : isolate_real_roots(q, Interval(box.xmin, box.xmax))) xs.emplace_back(r.value, -1);
    }
  for (auto& [v, ci] : xs) {
    // binary search among the events so far
    size_t lo = 0, hi = events.size();
    int found = -1;
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      int s = compare(v, events[mid].c);
      if (s == 0) {
        found = static_cast<int>(mid);
        break;
      }
      if (s < 0) hi = mid;
      else lo = mid + 1;
    }
    if (found < 0) {
      Event e;
      e.c = v;
      events.insert(events.begin() + lo, std::move(e));
      found = static_cast<int>(lo);
    }
    if (ci >= 0) events[found].crits.push_back(ci);
  }
  // strict separation of neighbouring isolating intervals
  for (size_t i = 0; i + 1 < events.size(); ++i) {
    AlgebraicReal &a = events[i].c, &b = events[i + 1].c;
    while (!(a.hi() < b.lo())) {
      a.bisect();
      b.bisect();
    }
  }
  for (size_t i = 0; i < events.size(); ++i) {
    Rational gap = pow2(0);
    if (i > 0) gap = std::min(gap, Rational(events[i].c.lo() - events[i - 1].c.hi()));
    if (i + 1 < events.size()) gap = std::min(gap, Rational(events[i + 1].c.lo() - events[i].c.hi()));
    events[i].hmax = gap / 4;
  }
}

bool Sweep::Impl::analyze(Event& ev, int level) {
  const Box& box = spec.box;
  const int bits = 4 + 8 * level;
  const Rational w = pow2(-bits);
  const Rational m = w / 4;
  Rational h = std::min(pow2(-3 * bits), ev.hmax);
  if (ev.c.is_exact()) {
    ev.tl = ev.c.lo() - h;
    ev.tr = ev.c.lo() + h;
  } else {
    ev.c.refine(2 * h);
    if (ev.c.is_exact()) return analyze(ev, level);
    ev.tl = ev.c.lo();
    ev.tr = ev.c.hi();
  }
  const Interval X(ev.tl, ev.tr);
  const bool last_level = level >= opt.max_level;

  // Critical boxes, merged when they overlap; zones absorb anything near the box edge.
  std::vector<Element> crit_elems;
  for (int ci : ev.crits) {
    AlgebraicReal& y = crits[ci].y;
    y.refine(m);
    Element e;
    e.kind = Element::Crit;
    e.ylo = y.lo() - w;
    e.yhi = y.hi() + w;
    e.crits = {ci};
    crit_elems.push_back(std::move(e));
  }
  std::sort(crit_elems.begin(), crit_elems.end(), [](auto& a, auto& b) { return a.ylo < b.ylo; });
  Element zb, zt;
  zb.kind = Element::ZoneBottom;
  zb.ylo = box.ymin;
  zb.yhi = box.ymin + w;
  zt.kind = Element::ZoneTop;
  zt.ylo = box.ymax - w;
  zt.yhi = box.ymax;
  std::vector<Element> merged;
  for (auto& e : crit_elems) {
    if (e.ylo <= zb.yhi) {
      zb.yhi = std::max(zb.yhi, e.yhi);
      zb.crits.insert(zb.crits.end(), e.crits.begin(), e.crits.end());
      continue;
    }
    if (!merged.empty() && e.ylo <= merged.back().yhi) {
      merged.back().yhi = std::max(merged.back().yhi, e.yhi);
      merged.back().crits.insert(merged.back().crits.end(), e.crits.begin(), e.crits.end());
      continue;
    }
    merged.push_back(std::move(e));
  }
  while (!merged.empty() && merged.back().yhi >= zt.ylo) {
    zt.ylo = std::min(zt.ylo, merged.back().ylo);
    zt.crits.insert(zt.crits.end(), merged.back().crits.begin(), merged.back().crits.end());
    merged.pop_back();
  }
  if (!zb.crits.empty() || !zt.crits.empty() || zb.yhi >= zt.ylo) {
    if (!last_level) return false;
  }
  if (!last_level)
    for (auto& e : merged)
      if (e.cluster()) return false;

  std::vector<Element> elems;
  elems.push_back(zb);
  for (auto& e : merged) elems.push_back(e);
  elems.push_back(zt);

  // Wall roots, assigned to critical boxes or left as regular roots.
  std::vector<LineRoot> roots[2];
  std::vector<int> root_elem[2];
  std::map<int, std::vector<int>> regular[2];  // curve -> indices into roots[side]
  for (int side = 0; side < 2; ++side) {
    const Rational& t = side == 0 ? ev.tl : ev.tr;
    roots[side] = line_roots(t);
    root_elem[side].assign(roots[side].size(), -1);
    for (size_t r = 0; r < roots[side].size(); ++r) {
      LineRoot& lr = roots[side][r];
      if (lr.mult != 1) return false;
      for (size_t e = 0; e < elems.size(); ++e) {
        if (lr.y.compare(elems[e].ylo) < 0 || lr.y.compare(elems[e].yhi) > 0) continue;
        Element& el = elems[e];
        if (el.kind == Element::Crit && !el.cluster()) {
          const CritPoint& cp = crits[el.crits[0]];
          if (lr.curve != cp.a && lr.curve != cp.b) return false;
        }
        root_elem[side][r] = static_cast<int>(e);
        auto& cnt = el.counts[lr.curve];
        (side == 0 ? cnt.first : cnt.second)++;
        break;
      }
      if (root_elem[side][r] < 0) regular[side][lr.curve].push_back(static_cast<int>(r));
    }
  }
  // Regular roots pair up by order into tubes.
  std::vector<std::pair<int, int>> tube_roots;  // (left index, right index)
  for (int j = 0; j < ncurves(); ++j) {
    auto& L = regular[0][j];
    auto& R = regular[1][j];
    if (L.size() != R.size()) return false;
    for (size_t k = 0; k < L.size(); ++k) {
      AlgebraicReal& a = roots[0][L[k]].y;
      AlgebraicReal& b = roots[1][R[k]].y;
      a.refine(m);
      b.refine(m);
      Element tube;
      tube.kind = Element::Tube;
      tube.curve = j;
      tube.ylo = std::min(a.lo(), b.lo()) - m;
      tube.yhi = std::max(a.hi(), b.hi()) + m;
      tube.counts[j] = {1, 1};
      elems.push_back(std::move(tube));
      tube_roots.emplace_back(L[k], R[k]);
      root_elem[0][L[k]] = static_cast<int>(elems.size()) - 1;
      root_elem[1][R[k]] = static_cast<int>(elems.size()) - 1;
    }
  }
  // Sort elements by y and check disjointness.
  std::vector<int> perm(elems.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return elems[a].ylo < elems[b].ylo; });
  std::vector<int> where(elems.size());
  std::vector<Element> sorted;
  for (size_t k = 0; k < perm.size(); ++k) {
    where[perm[k]] = static_cast<int>(k);
    sorted.push_back(elems[perm[k]]);
  }
  for (int side = 0; side < 2; ++side)
    for (auto& re : root_elem[side]) re = where[re];
  elems = std::move(sorted);
  for (size_t k = 0; k + 1 < elems.size(); ++k)
    if (!(elems[k].yhi < elems[k + 1].ylo)) return false;

  // Certificates that each box contains exactly the expected piece of curve.
  auto definite = [](const Interval& v) { return v.sign() != 0; };
  auto edge_sign = [&](int j, const Rational& y) { return f(j).eval(X, Interval(y)).sign(); };
  for (auto& el : elems) {
    const Interval Y(el.ylo, el.yhi);
    if (el.kind == Element::Tube) {
      const int j = el.curve;
      if (!definite(fy[j].eval(X, Y))) return false;
      int s1 = edge_sign(j, el.ylo), s2 = edge_sign(j, el.yhi);
      if (s1 == 0 || s2 == 0 || s1 == s2) return false;
    } else if (el.kind == Element::Crit && !el.cluster()) {
      const CritPoint& cp = crits[el.crits[0]];
      if (cp.kind == CritKind::Fold) {
        const int j = cp.a;
        if (!definite(fx[j].eval(X, Y))) return false;
        if (edge_sign(j, el.ylo) == 0 || edge_sign(j, el.yhi) == 0) return false;
        auto c = el.counts[j];
        if (!((c.first == 2 && c.second == 0) || (c.first == 0 && c.second == 2) ||
              (c.first == 1 && c.second == 1)))
          return false;
      } else {
        for (int j : {cp.a, cp.b}) {
          if (!definite(fy[j].eval(X, Y))) return false;
          if (edge_sign(j, el.ylo) == 0 || edge_sign(j, el.yhi) == 0) return false;
          auto c = el.counts[j];
          if (c.first != 1 || c.second != 1) return false;
        }
      }
    }
  }

  // Gap signs, evaluated exactly on the left wall.
  const int G = static_cast<int>(elems.size()) - 1;
  ev.gap_pos.assign(G, 0);
  for (int g = 0; g < G; ++g) {
    Rational y = (elems[g].yhi + elems[g + 1].ylo) / 2;
    bool pos = true;
    for (int j = 0; j < ncurves(); ++j) {
      int s = sgn(f(j).eval(ev.tl, y));
      if (s == 0) return false;
      if (s < 0) pos = false;
    }
    ev.gap_pos[g] = pos;
  }
  ev.elems = elems;

  // Positive wall intervals and the item (gap or element) each belongs to.
  const int E = static_cast<int>(elems.size());
  auto elem_of = [&](int side, int root_index) {
    if (root_index < 0) return 0;  // bottom sentinel
    if (root_index >= static_cast<int>(roots[side].size())) return E - 1;
    return root_elem[side][root_index];
  };
  for (int side = 0; side < 2; ++side) {
    const Rational& t = side == 0 ? ev.tl : ev.tr;
    auto ivs = positive_intervals(t, roots[side]);
    for (auto& iv : ivs) {
      int k = iv.item;  // lower root index + 1
      int ea = elem_of(side, k - 1), eb = elem_of(side, k);
      if (ea == eb) {
        if (elems[ea].kind == Element::Tube) return false;
        iv.item = G + ea;
      } else {
        if (ea >= G || !ev.gap_pos[ea]) return false;
        iv.item = ea;
      }
    }
    (side == 0 ? ev.left : ev.right) = std::move(ivs);
  }

  // Fiber components at c.
  UnionFind uf(G + E);
  std::vector<char> live(G + E, 0);
  for (int g = 0; g < G; ++g) live[g] = ev.gap_pos[g];
  for (int e = 0; e < E; ++e) {
    if (elems[e].kind == Element::Tube) continue;
    if (e > 0 && ev.gap_pos[e - 1]) {
      uf.unite(G + e, e - 1);
      live[G + e] = 1;
    }
    if (e < G && ev.gap_pos[e]) {
      uf.unite(G + e, e);
      live[G + e] = 1;
    }
  }
  for (auto* side : {&ev.left, &ev.right})
    for (auto& iv : *side) live[iv.item] = 1;
  std::map<int, int> class_of_root;
  ev.item_class.assign(G + E, -1);
  ev.class_outside.clear();
  ev.class_crits.clear();
  for (int it = 0; it < G + E; ++it) {
    if (!live[it]) continue;
    int r = uf.find(it);
    auto [pos, inserted] = class_of_root.try_emplace(r, static_cast<int>(class_of_root.size()));
    if (inserted) {
      ev.class_outside.push_back(0);
      ev.class_crits.emplace_back();
    }
    int cls = pos->second;
    ev.item_class[it] = cls;
    if (it >= G) {
      const Element& el = elems[it - G];
      if (el.kind == Element::ZoneBottom || el.kind == Element::ZoneTop) ev.class_outside[cls] = 1;
      for (int ci : el.crits) ev.class_crits[cls].push_back(ci);
    }
  }
  ev.nclass = static_cast<int>(class_of_root.size());
  for (auto* side : {&ev.left, &ev.right})
    for (auto& iv : *side) iv.cls = ev.item_class[iv.item];
  ev.level = level;
  return true;
}

void Sweep::Impl::link() {
  node_offset.assign(events.size(), 0);
  nnodes = 1;
  for (size_t i = 0; i < events.size(); ++i) {
    node_offset[i] = nnodes;
    nnodes += events[i].nclass;
  }
  const int E = static_cast<int>(events.size());
  for (int s = 0; s <= E; ++s) {
    const std::vector<WallInterval>* lhs = s > 0 ? &events[s - 1].right : nullptr;
    const std::vector<WallInterval>* rhs = s < E ? &events[s].left : nullptr;
    size_t n = lhs ? lhs->size() : rhs ? rhs->size() : 0;
    if (lhs && rhs && lhs->size() != rhs->size())
      throw Error("sweep-inconsistent", "fiber interval counts differ across slab " + std::to_string(s));
    for (size_t k = 0; k < n; ++k) {
      SlabEdge se{s, static_cast<int>(k), 0, 0, -1, -1, -1, -1};
      if (lhs) {
        se.from = global(s - 1, (*lhs)[k].cls);
        se.lo_curve_l = (*lhs)[k].lo_curve;
        se.hi_curve_l = (*lhs)[k].hi_curve;
      }
      if (rhs) {
        se.to = global(s, (*rhs)[k].cls);
        se.lo_curve_r = (*rhs)[k].lo_curve;
        se.hi_curve_r = (*rhs)[k].hi_curve;
      }
      if (se.from < 0 || se.to < 0) throw Error("sweep-inconsistent", "wall interval without a fiber component");
      slab_edges.push_back(se);
    }
  }
  // Zone classes are the outside node.
  std::vector<int> rep(nnodes);
  std::iota(rep.begin(), rep.end(), 0);
  for (size_t i = 0; i < events.size(); ++i)
    for (int c = 0; c < events[i].nclass; ++c)
      if (events[i].class_outside[c]) rep[global(static_cast<int>(i), c)] = 0;
  UnionFind uf(nnodes);
  for (int v = 0; v < nnodes; ++v) uf.unite(v, rep[v]);
  for (auto& se : slab_edges) uf.unite(se.from, se.to);
  base_node = locate_basepoint();
  in_comp.assign(nnodes, 0);
  for (int v = 0; v < nnodes; ++v) in_comp[v] = uf.find(v) == uf.find(base_node);
}

int Sweep::Impl::locate_basepoint() {
  const Rational& bx = spec.bx;
  const Rational& by = spec.by;
  if (!positive_at(bx, by)) throw Error("basepoint-not-positive", "basepoint is not in the positive region");
  const int E = static_cast<int>(events.size());
  int slab = E;
  for (int i = 0; i < E; ++i) {
    int s = events[i].c.compare(bx);
    if (s == 0) {
      // Slide right to the wall; the horizontal segment must stay positive.
      Event& ev = events[i];
      Interval seg(bx, ev.tr);
      for (int j = 0; j < ncurves(); ++j)
        if (f(j).eval(seg, Interval(by)).sign() <= 0)
          throw Error("sweep-refinement", "cannot certify the basepoint segment");
      for (auto& iv : ev.right)
        if (iv.lo.compare(by) < 0 && iv.hi.compare(by) > 0) return global(i, iv.cls);
      throw Error("sweep-inconsistent", "basepoint not found on the wall");
    }
    if (s > 0) {
      slab = i;
      break;
    }
  }
  auto roots = line_roots(bx);
  auto ivs = positive_intervals(bx, roots);
  for (size_t k = 0; k < ivs.size(); ++k) {
    if (ivs[k].lo.compare(by) < 0 && ivs[k].hi.compare(by) > 0) {
      for (auto& se : slab_edges)
        if (se.slab == slab && se.index == static_cast<int>(k)) return se.from != 0 ? se.from : se.to;
      return 0;
    }
  }
  throw Error("sweep-inconsistent", "basepoint not found in its fiber");
}

Sweep::Impl::Impl(const DomainSpec& s, const SweepOptions& o) : spec(s), opt(o) {
  const Box& b = spec.box;
  if (!(b.xmin < b.xmax && b.ymin < b.ymax)) throw Error("invalid-box", "working box is empty");
  if (!b.contains(spec.bx, spec.by)) throw Error("basepoint-outside-box", "basepoint outside the working box");
  for (auto& c : spec.curves) {
    if (c.f.degree() < 1) throw Error("constant-curve", "curve " + c.id + " is constant");
    fx.push_back(c.f.dx());
    fy.push_back(c.f.dy());
  }
  collect_crit_points();
  build_events();
  crit_event.assign(crits.size(), -1);
  crit_elem.assign(crits.size(), -1);
  for (size_t i = 0; i < events.size(); ++i) {
    Event& ev = events[i];
    bool ok = false;
    for (int level = 1; level <= opt.max_level && !ok; ++level) ok = analyze(ev, level);
    if (!ok)
      throw Error("sweep-refinement",
                  "could not resolve the fiber structure near x = " + std::to_string(ev.c.approx()));
    for (size_t e = 0; e < ev.elems.size(); ++e)
      for (int ci : ev.elems[e].crits) {
        crit_event[ci] = static_cast<int>(i);
        crit_elem[ci] = static_cast<int>(e);
      }
  }
  link();
}

Sweep::Sweep(const DomainSpec& spec, const SweepOptions& opt) : impl_(std::make_unique<Impl>(spec, opt)) {}
Sweep::~Sweep() = default;

const DomainSpec& Sweep::spec() const { return impl_->spec; }
const std::vector<CritPoint>& Sweep::crit_points() const { return impl_->crits; }
bool Sweep::touches_box() const { return impl_->in_comp[0]; }

namespace {
int class_of_elem(const Event& ev, int e) { return ev.item_class[ev.gaps() + e]; }
}  // namespace

std::vector<int> Sweep::closure_points() const {
  std::vector<int> out;
  const Impl& I = *impl_;
  for (size_t ci = 0; ci < I.crits.size(); ++ci) {
    int ev = I.crit_event[ci];
    int cls = class_of_elem(I.events[ev], I.crit_elem[ci]);
    if (cls < 0) continue;
    if (I.in_comp[I.global(ev, cls)] || (I.events[ev].class_outside[cls] && I.in_comp[0]))
      out.push_back(static_cast<int>(ci));
  }
  return out;
}

std::vector<std::vector<int>> Sweep::closure_clusters() const {
  std::vector<std::vector<int>> out;
  const Impl& I = *impl_;
  for (size_t i = 0; i < I.events.size(); ++i) {
    const Event& ev = I.events[i];
    for (size_t e = 0; e < ev.elems.size(); ++e) {
      const Element& el = ev.elems[e];
      if (el.kind != Element::Crit || !el.cluster()) continue;
      int cls = class_of_elem(ev, static_cast<int>(e));
      if (cls >= 0 && I.in_comp[I.global(static_cast<int>(i), cls)]) out.push_back(el.crits);
    }
  }
  return out;
}

std::vector<bool> Sweep::curves_meeting_closure() const {
  const Impl& I = *impl_;
  std::vector<bool> meets(I.ncurves(), false);
  for (auto& se : I.slab_edges) {
    if (!I.in_comp[se.from] && !I.in_comp[se.to]) continue;
    for (int c : {se.lo_curve_l, se.hi_curve_l, se.lo_curve_r, se.hi_curve_r})
      if (c >= 0) meets[c] = true;
  }
  for (int ci : closure_points()) {
    meets[I.crits[ci].a] = true;
    if (I.crits[ci].b >= 0) meets[I.crits[ci].b] = true;
  }
  return meets;
}

FoldKind Sweep::fold_kind(int ci) const {
  const Impl& I = *impl_;
  const Event& ev = I.events[I.crit_event[ci]];
  const int e = I.crit_elem[ci];
  const Element& el = ev.elems[e];
  if (I.crits[ci].kind != CritKind::Fold || el.kind != Element::Crit || el.cluster()) return FoldKind::Unclassified;
  bool below = e > 0 && ev.gap_pos[e - 1];
  bool above = e < ev.gaps() && ev.gap_pos[e];
  if (below && above) return FoldKind::Indefinite;
  if (!below && !above) return FoldKind::Definite;
  return FoldKind::Unclassified;
}

std::vector<AlgebraicReal> Sweep::closure_critical_values() const {
  const Impl& I = *impl_;
  std::set<int> evs;
  for (int ci : closure_points()) evs.insert(I.crit_event[ci]);
  std::vector<AlgebraicReal> out;
  for (int e : evs) out.push_back(I.events[e].c);
  return out;
}

PRGraph Sweep::graph() const {
  const Impl& I = *impl_;
  if (touches_box()) throw Error("invalid-domain", "the basepoint component reaches the working box");
  // Global nodes: which are vertices (contain closure points)?
  std::vector<int> node_event(I.nnodes, -1), node_class(I.nnodes, -1);
  for (size_t i = 0; i < I.events.size(); ++i)
    for (int c = 0; c < I.events[i].nclass; ++c) {
      node_event[I.global(static_cast<int>(i), c)] = static_cast<int>(i);
      node_class[I.global(static_cast<int>(i), c)] = c;
    }
  std::vector<std::vector<int>> out_edges(I.nnodes), in_edges(I.nnodes);
  for (size_t k = 0; k < I.slab_edges.size(); ++k) {
    const SlabEdge& se = I.slab_edges[k];
    if (!I.in_comp[se.from]) continue;
    out_edges[se.from].push_back(static_cast<int>(k));
    in_edges[se.to].push_back(static_cast<int>(k));
  }
  PRGraph pr;
  std::vector<int> vid(I.nnodes, -1);
  auto pt_json = [&](int ci) {
    CritPoint cp = I.crits[ci];
    cp.x.refine_bits(40);
    cp.y.refine_bits(40);
    nlohmann::json j;
    j["type"] = cp.kind == CritKind::Fold ? "fold" : "crossing";
    std::vector<std::string> cs{I.spec.curves[cp.a].id};
    if (cp.b >= 0) cs.push_back(I.spec.curves[cp.b].id);
    j["curves"] = cs;
    j["x"] = {{"lo", format_rational(cp.x.lo())}, {"hi", format_rational(cp.x.hi())}};
    j["y"] = {{"lo", format_rational(cp.y.lo())}, {"hi", format_rational(cp.y.hi())}};
    if (cp.kind == CritKind::Fold) j["kind"] = to_string(fold_kind(ci));
    else j["transverse"] = cp.transverse;
    return j;
  };
  std::map<int, int> event_rank;
  for (int v = 1; v < I.nnodes; ++v) {
    if (!I.in_comp[v]) continue;
    const Event& ev = I.events[node_event[v]];
    const auto& cps = ev.class_crits[node_class[v]];
    if (cps.empty()) {
      if (in_edges[v].size() != 1 || out_edges[v].size() != 1)
        throw Error("sweep-inconsistent", "regular fiber component is not a pass-through");
      continue;
    }
    event_rank.emplace(node_event[v], 0);
  }
  int r = 0;
  for (auto& [e, rank] : event_rank) rank = r++;
  for (int v = 1; v < I.nnodes; ++v) {
    if (!I.in_comp[v] || I.events[node_event[v]].class_crits[node_class[v]].empty()) continue;
    const int e = node_event[v];
    AlgebraicReal c = I.events[e].c;
    c.refine_bits(64);
    nlohmann::json prov;
    prov["points"] = nlohmann::json::array();
    for (int ci : I.events[e].class_crits[node_class[v]]) prov["points"].push_back(pt_json(ci));
    vid[v] = pr.graph.add_vertex("v" + std::to_string(pr.graph.vertices.size()), c.interval(), event_rank[e], prov);
    pr.values.push_back(I.events[e].c);
  }
  for (int v = 1; v < I.nnodes; ++v) {
    if (vid[v] < 0) continue;
    for (int k : out_edges[v]) {
      nlohmann::json slabs = nlohmann::json::array();
      int cur = k;
      for (;;) {
        const SlabEdge& se = I.slab_edges[cur];
        slabs.push_back({se.slab, se.index});
        if (vid[se.to] >= 0) break;
        if (se.to == 0) throw Error("sweep-inconsistent", "edge leaves through the box");
        cur = out_edges[se.to][0];
      }
      pr.graph.add_edge("e" + std::to_string(pr.graph.edges.size()), vid[v], vid[I.slab_edges[cur].to],
                        nlohmann::json{{"slabs", slabs}});
    }
  }
  return pr;
}

SliceProfile Sweep::slice(const Rational& t) const {
  const Impl& I = *impl_;
  const Box& box = I.spec.box;
  if (t < box.xmin || t > box.xmax) throw Error("slice-outside-box", "slice abscissa outside the working box");
  auto roots = I.line_roots(t);
  auto ivs = I.positive_intervals(t, roots);
  auto curve_name = [&](int c) { return c < 0 ? std::string("box") : I.spec.curves[c].id; };
  SliceProfile out;
  out.t = t;
  const int E = static_cast<int>(I.events.size());
  int slab = E, crit = -1;
  for (int i = 0; i < E; ++i) {
    AlgebraicReal c = I.events[i].c;
    int s = c.compare(t);
    if (s == 0) {
      crit = i;
      break;
    }
    if (s > 0) {
      slab = i;
      break;
    }
  }
  for (size_t k = 0; k < ivs.size(); ++k) {
    FiberInterval fi;
    fi.lo = ivs[k].lo;
    fi.hi = ivs[k].hi;
    fi.lo_curve = curve_name(ivs[k].lo_curve);
    fi.hi_curve = curve_name(ivs[k].hi_curve);
    if (crit < 0) {
      for (auto& se : I.slab_edges)
        if (se.slab == slab && se.index == static_cast<int>(k)) fi.member = I.in_comp[se.from] != 0;
    } else {
      const Event& ev = I.events[crit];
      const int G = ev.gaps();
      auto elem_at = [&](AlgebraicReal y) {
        for (int e = 0; e <= G; ++e)
          if (y.compare(ev.elems[e].ylo) >= 0 && y.compare(ev.elems[e].yhi) <= 0) return e;
        return -1;
      };
      int ea = elem_at(fi.lo), eb = elem_at(fi.hi);
      if (ea < 0) throw Error("sweep-inconsistent", "slice endpoint outside every critical element");
      int item = ea == eb ? G + ea : ea;
      int cls = ev.item_class[item];
      fi.member = cls >= 0 && I.in_comp[I.global(crit, cls)];
    }
    out.intervals.push_back(std::move(fi));
  }
  return out;
}

std::vector<AlgebraicReal> critical_x_values(const DomainSpec& spec) {
  Sweep sw(spec);
  return sw.closure_critical_values();
}

SliceProfile slice(const DomainSpec& spec, const Rational& t) {
  Sweep sw(spec);
  return sw.slice(t);
}

PRGraph build_poincare_reeb(const DomainSpec& spec, const SweepOptions& opt) {
  DomainReport rep = validate_domain(spec);
  if (!rep.ok()) {
    std::string msg;
    for (auto& v : rep.violations) msg += (msg.empty() ? "" : "; ") + v.tag + ": " + v.message;
    throw Error("invalid-domain", msg);
  }
  Sweep sw(spec, opt);
  return sw.graph();
}

VDigraph raster_graph(const Box& box, int resolution, double bx, double by,
                      const std::function<bool(double, double)>& inside) {
  if (resolution < 2) throw Error("bad-resolution", "raster resolution must be at least 2");
  const int n = resolution;
  const double x0 = to_double(box.xmin), y0 = to_double(box.ymin);
  const double dx = (to_double(box.xmax) - x0) / n, dy = (to_double(box.ymax) - y0) / n;
  std::vector<char> mark(static_cast<size_t>(n) * n);
  auto at = [n](int i, int j) { return static_cast<size_t>(i) * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mark[at(i, j)] = inside(x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy);
  int bi = std::clamp(static_cast<int>((bx - x0) / dx), 0, n - 1);
  int bj = std::clamp(static_cast<int>((by - y0) / dy), 0, n - 1);
  if (!mark[at(bi, bj)]) throw Error("basepoint-not-marked", "the basepoint cell is not inside the domain");

  std::vector<char> comp(mark.size(), 0);
  std::vector<std::pair<int, int>> stack{{bi, bj}};
  comp[at(bi, bj)] = 1;
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      int a = i + di[d], b = j + dj[d];
      if (a < 0 || b < 0 || a >= n || b >= n || !mark[at(a, b)] || comp[at(a, b)]) continue;
      comp[at(a, b)] = 1;
      stack.emplace_back(a, b);
    }
  }

  struct Run {
    int col, lo, hi;
    std::vector<int> in, out;
  };
  std::vector<Run> runs;
  std::vector<std::vector<int>> col_runs(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n;) {
      if (!comp[at(i, j)]) {
        ++j;
        continue;
      }
      int k = j;
      while (k < n && comp[at(i, k)]) ++k;
      col_runs[i].push_back(static_cast<int>(runs.size()));
      runs.push_back({i, j, k - 1, {}, {}});
      j = k;
    }
  for (int i = 0; i + 1 < n; ++i)
    for (int a : col_runs[i])
      for (int b : col_runs[i + 1])
        if (runs[a].lo <= runs[b].hi && runs[b].lo <= runs[a].hi) {
          runs[a].out.push_back(b);
          runs[b].in.push_back(a);
        }

  VDigraph g;
  std::vector<int> vid(runs.size(), -1);
  for (size_t r = 0; r < runs.size(); ++r) {
    if (runs[r].in.size() == 1 && runs[r].out.size() == 1) continue;
    Rational xc = dyadic_round(x0 + (runs[r].col + 0.5) * dx, 40);
    vid[r] = g.add_vertex("r" + std::to_string(g.vertices.size()), Interval(xc), 0);
  }
  for (size_t r = 0; r < runs.size(); ++r) {
    if (vid[r] < 0) continue;
    for (int nxt : runs[r].out) {
      int cur = nxt;
      while (vid[cur] < 0) cur = runs[cur].out[0];
      g.add_edge("e" + std::to_string(g.edges.size()), vid[r], vid[cur]);
    }
  }
  g.ranks_from_values();
  return g;
}

VDigraph raster_oracle(const DomainSpec& spec, int resolution) {
  std::vector<DoublePoly> polys;
  for (auto& c : spec.curves) polys.emplace_back(c.f);
  auto inside = [&](double x, double y) {
    for (auto& p : polys)
      if (!(p(x, y) > 0)) return false;
    return true;
  };
  return raster_graph(spec.box, resolution, to_double(spec.bx), to_double(spec.by), inside);
}

}  // namespace prkit

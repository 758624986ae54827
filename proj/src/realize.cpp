#include "prkit/realize.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "prkit/error.hpp"
#include "prkit/io.hpp"
#include "prkit/system.hpp"

namespace prkit {

namespace {

using nlohmann::json;

std::string qs(const Rational& q) { return q.get_str(); }

json point_json(const Point& p) { return json::array({qs(p.first), qs(p.second)}); }

Rational pow2(int k) {
  Rational r = 1;
  if (k >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), k);
  else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -k);
  return r;
}

Box bounding_box(const std::vector<Segment>& cx, const Rational& margin) {
  Box b{cx[0].a.first, cx[0].a.first, cx[0].a.second, cx[0].a.second};
  for (auto& s : cx)
    for (auto* p : {&s.a, &s.b}) {
      b.xmin = std::min(b.xmin, p->first);
      b.xmax = std::max(b.xmax, p->first);
      b.ymin = std::min(b.ymin, p->second);
      b.ymax = std::max(b.ymax, p->second);
    }
  b.xmin -= margin;
  b.xmax += margin;
  b.ymin -= margin;
  b.ymax += margin;
  return b;
}

// Points of the complex, far from the other pieces, in decreasing piece length.
std::vector<Point> basepoint_candidates(const std::vector<Segment>& cx) {
  std::vector<std::pair<double, Point>> c;
  for (auto& s : cx) {
    Rational mx = (s.a.first + s.b.first) / 2, my = (s.a.second + s.b.second) / 2;
    mx.canonicalize();
    my.canonicalize();
    const double len = std::hypot(Rational(s.b.first - s.a.first).get_d(), Rational(s.b.second - s.a.second).get_d());
    c.push_back({s.role == "edge" ? len + 1e6 : len, {mx, my}});
  }
  std::stable_sort(c.begin(), c.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::vector<Point> out;
  for (auto& [l, p] : c) out.push_back(p);
  return out;
}

VDigraph thickened_graph(const std::vector<Segment>& cx, const Rational& delta, const Box& box, int res,
                         const Point& base) {
  const double d = delta.get_d();
  return raster_graph(box, res, base.first.get_d(), base.second.get_d(),
                      [&](double x, double y) { return distance_to_complex(cx, x, y) < d; });
}

struct Frame {
  Rational cx, cy, s;
};

Frame make_frame(const Box& b) {
  Frame f;
  f.cx = dyadic_round(Rational((b.xmin + b.xmax) / 2), 10);
  f.cy = dyadic_round(Rational((b.ymin + b.ymax) / 2), 10);
  double half = std::max(Rational(b.xmax - b.xmin).get_d(), Rational(b.ymax - b.ymin).get_d()) / 2;
  f.s = pow2(static_cast<int>(std::ceil(std::log2(half))));
  return f;
}

BPoly fit_outer(const std::vector<Segment>& cx, const Rational& delta, const Box& box, const Frame& fr, int degree,
                int grid, double& residual) {
  const double d = delta.get_d();
  const double x0 = box.xmin.get_d(), x1 = box.xmax.get_d(), y0 = box.ymin.get_d(), y1 = box.ymax.get_d();
  const double cxd = fr.cx.get_d(), cyd = fr.cy.get_d(), sd = fr.s.get_d();
  std::vector<FitSample> samples;
  samples.reserve(static_cast<size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double x = x0 + (i + 0.5) * (x1 - x0) / grid, y = y0 + (j + 0.5) * (y1 - y0) / grid;
      const double dist = distance_to_complex(cx, x, y);
      FitSample s;
      s.x = dyadic_round((x - cxd) / sd, 24);
      s.y = dyadic_round((y - cyd) / sd, 24);
      // Signed offset distance, capped inside only: the linear growth outside
      // keeps stray components of the zero set away.
      s.value = std::min(d - dist, d) / d;
      s.weight = std::exp(-std::pow(dist / (3 * d), 2)) + 0.005;
      samples.push_back(s);
    }
  FitOptions opt;
  opt.degree = degree;
  opt.rounding_bits = 40;
  FitResult fr_ = fit_polynomial(samples, opt);
  residual = fr_.residual;
  Rational inv = 1 / fr.s;
  return fr_.poly.affine(inv, -fr.cx * inv, inv, -fr.cy * inv);
}

// Roots of y -> f(p, y) in [lo, hi] by sampling and bisection.
std::vector<double> numeric_roots_at(const DoublePoly& f, double p, double lo, double hi, int n = 4000) {
  std::vector<double> r;
  double ya = lo, fa = f(p, ya);
  for (int k = 1; k <= n; ++k) {
    double yb = lo + (hi - lo) * k / n, fb = f(p, yb);
    if ((fa > 0) != (fb > 0)) {
      double a = ya, b = yb, va = fa;
      for (int it = 0; it < 80; ++it) {
        double m = (a + b) / 2, vm = f(p, m);
        if ((vm > 0) == (va > 0)) a = m, va = vm;
        else b = m;
      }
      r.push_back((a + b) / 2);
    }
    ya = yb;
    fa = fb;
  }
  return r;
}

// Exact low-degree interpolant through the values of f at pts, subtracted
// from f so that every point lies on the new zero set.
BPoly pin_points(const BPoly& f, const std::vector<Point>& pts) {
  if (pts.empty()) return f;
  std::vector<std::pair<int, int>> mons;
  auto column = [&](int i, int j) {
    std::vector<Rational> c;
    for (auto& [x, y] : pts) {
      Rational v = 1;
      for (int k = 0; k < i; ++k) v *= x;
      for (int k = 0; k < j; ++k) v *= y;
      c.push_back(v);
    }
    return c;
  };
  // Greedy column selection: keep a monomial when it raises the rank.
  std::vector<std::vector<Rational>> basis;  // echelon form of chosen columns
  std::vector<int> pivots;
  for (int d = 0; mons.size() < pts.size() && d <= 2 * static_cast<int>(pts.size()); ++d)
    for (int i = d; i >= 0 && mons.size() < pts.size(); --i) {
      auto c = column(i, d - i);
      for (size_t b = 0; b < basis.size(); ++b) {
        Rational fct = c[pivots[b]] / basis[b][pivots[b]];
        if (sgn(fct) != 0)
          for (size_t k = 0; k < c.size(); ++k) c[k] -= fct * basis[b][k];
      }
      int piv = -1;
      for (size_t k = 0; k < c.size(); ++k)
        if (sgn(c[k]) != 0) {
          piv = static_cast<int>(k);
          break;
        }
      if (piv < 0) continue;
      basis.push_back(c);
      pivots.push_back(piv);
      mons.emplace_back(i, d - i);
    }
  if (mons.size() < pts.size()) throw Error("internal", "pinning system is singular");
  const size_t n = pts.size();
  std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n + 1));
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < n; ++c) {
      Rational v = 1;
      for (int k = 0; k < mons[c].first; ++k) v *= pts[r].first;
      for (int k = 0; k < mons[c].second; ++k) v *= pts[r].second;
      A[r][c] = v;
    }
    A[r][n] = f.eval(pts[r].first, pts[r].second);
  }
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (sgn(A[p][c]) == 0) ++p;
    std::swap(A[p], A[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || sgn(A[r][c]) == 0) continue;
      Rational fct = A[r][c] / A[c][c];
      for (size_t k = c; k <= n; ++k) A[r][k] -= fct * A[c][k];
    }
  }
  BPoly::Terms L;
  for (size_t c = 0; c < n; ++c) L[mons[c]] = A[c][n] / A[c][c];
  return f - BPoly(L);
}

struct Tip {
  int vertex;
  Rational p, ylo, yhi;
  int side;       // -1: the arm extends to larger x
  bool prefer_lower;
};

// Raster of the basepoint component of {f > 0}, 4-connected.
class ComponentMask {
 public:
  ComponentMask(const DoublePoly& f, const Box& box, int n, double bx, double by)
      : n_(n), x0_(box.xmin.get_d()), y0_(box.ymin.get_d()) {
    hx_ = (box.xmax.get_d() - x0_) / n;
    hy_ = (box.ymax.get_d() - y0_) / n;
    std::vector<char> pos(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pos[idx(i, j)] = f(x0_ + (i + 0.5) * hx_, y0_ + (j + 0.5) * hy_) > 0;
    in_.assign(pos.size(), 0);
    int si = cell(bx, x0_, hx_), sj = cell(by, y0_, hy_);
    if (si < 0 || sj < 0 || !pos[idx(si, sj)]) return;
    std::vector<std::pair<int, int>> stack{{si, sj}};
    in_[idx(si, sj)] = 1;
    while (!stack.empty()) {
      auto [i, j] = stack.back();
      stack.pop_back();
      const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        int a = i + di[k], b = j + dj[k];
        if (a < 0 || b < 0 || a >= n || b >= n || !pos[idx(a, b)] || in_[idx(a, b)]) continue;
        in_[idx(a, b)] = 1;
        stack.push_back({a, b});
      }
    }
  }

  bool operator()(double x, double y) const {
    int i = cell(x, x0_, hx_), j = cell(y, y0_, hy_);
    return i >= 0 && j >= 0 && in_[idx(i, j)];
  }

 private:
  int n_;
  double x0_, y0_, hx_ = 0, hy_ = 0;
  std::vector<char> in_;
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
  int cell(double v, double v0, double h) const {
    int k = static_cast<int>(std::floor((v - v0) / h));
    return k >= 0 && k < n_ ? k : -1;
  }
};

// Changes of component membership along a sampled conic boundary.
int crossings_along(const ComponentMask& m, const ConicSpec& c, int n = 4096) {
  const double cx = c.cx.get_d(), cy = c.cy.get_d();
  const double ax = std::sqrt(Rational(c.r / c.a1).get_d());
  const double ay = std::sqrt(Rational(c.r / c.a2).get_d());
  int changes = 0;
  bool prev = m(cx + ax, cy), first = prev;
  for (int k = 1; k < n; ++k) {
    const double t = 2 * M_PI * k / n;
    bool cur = m(cx + ax * std::cos(t), cy + ay * std::sin(t));
    if (cur != prev) ++changes;
    prev = cur;
  }
  if (prev != first) ++changes;
  return changes;
}

BPoly interior_poly(const ConicSpec& c) {
  ConicSpec in = c;
  in.sign = ConicSign::InteriorPositive;
  return conic(in);
}

bool conics_disjoint(const ConicSpec& a, const ConicSpec& b, const Box& box) {
  BPoly pa = interior_poly(a), pb = interior_poly(b);
  if (sgn(pa.eval(b.cx, b.cy)) >= 0 || sgn(pb.eval(a.cx, a.cy)) >= 0) return false;
  return solve_system(pa, pb, box).empty();
}

// A dyadic upper bound for sqrt(q), a little loose.
Rational sqrt_upper(const Rational& q) {
  return dyadic_round(std::sqrt(q.get_d()) * (1 + 1e-6) + 2e-9, 30);
}

// The gradients of f and g are independent at (x, y).
bool transverse_at(const BPoly& f, const BPoly& g, const Rational& x, const Rational& y) {
  Rational det = f.dx().eval(x, y) * g.dy().eval(x, y) - f.dy().eval(x, y) * g.dx().eval(x, y);
  return sgn(det) != 0;
}

struct Attempt {
  bool ok = false;
  std::string reason;
};

}  // namespace

json RealizationConfig::to_json() const {
  json j;
  auto opt = [](const std::optional<Rational>& q) { return q ? json(qs(*q)) : json(nullptr); };
  j["eps1"] = opt(eps1);
  j["eps2"] = opt(eps2);
  j["eps_prime"] = opt(eps_prime);
  j["delta"] = opt(delta);
  j["excision_scale"] = qs(excision_scale);
  j["degree_schedule"] = degree_schedule;
  j["max_degree"] = max_degree;
  j["raster_resolution"] = raster_resolution;
  j["fit_grid"] = fit_grid;
  j["mode"] = piecewise ? "piecewise" : "algebraic";
  j["sweep_max_level"] = sweep.max_level;
  return j;
}

namespace {

class Realizer {
 public:
  Realizer(const EmbeddedGraph& g, const RealizationConfig& cfg) : g_(g), cfg_(cfg) {}

  Realization run() {
    auto& art = out_.artifacts;
    art.params = choose_parameters(g_, cfg_);
    art.neighborhoods = rewire(g_, art.params);
    art.vertical = vertical_segments(g_, art.params);
    art.complex = build_complex(g_, art.params, art.neighborhoods);
    std::map<std::string, int> counts;
    for (auto& s : art.complex) counts[s.role]++;
    art.ledger = counts;
    input_ = to_vdigraph(g_);

    std::vector<Rational> deltas;
    if (cfg_.delta) deltas.push_back(*cfg_.delta);
    else
      for (auto [a, b] : {std::pair{4, 5}, {3, 5}, {2, 5}, {1, 4}}) deltas.push_back(art.params.eps1 * Rational(a, b));

    std::string last;
    for (auto& delta : deltas) {
      art.params.delta = delta;
      if (!thicken_ok(delta)) {
        last = "thickening with delta " + qs(delta) + " does not reproduce the graph (offsets overlap; try a smaller delta)";
        continue;
      }
      if (cfg_.piecewise) {
        out_.graph = art.piecewise_graph;
        out_.verified = true;
        out_.algebraic = false;
        return out_;
      }
      if (algebraize(delta)) return out_;
      last = "no fitting degree up to " + std::to_string(cfg_.max_degree) + " passed with delta " + qs(delta);
    }
    out_.failure = last.empty() ? "no admissible delta" : last;
    return out_;
  }

 private:
  const EmbeddedGraph& g_;
  const RealizationConfig& cfg_;
  Realization out_;
  VDigraph input_;
  Box box_;
  Point base_;

  void log(json j) { out_.artifacts.transcript.push_back(std::move(j)); }

  double window() const { return 4 * out_.artifacts.params.eps1.get_d(); }

  bool thicken_ok(const Rational& delta) {
    auto& art = out_.artifacts;
    box_ = bounding_box(art.complex, 6 * delta);
    base_ = basepoint_candidates(art.complex).front();
    art.inventory = fold_inventory(g_, art.params, art.neighborhoods);
    json entry{{"stage", "thicken"}, {"delta", qs(delta)}};
    try {
      art.piecewise_graph = thickened_graph(art.complex, delta, box_, cfg_.raster_resolution, base_);
    } catch (const Error& e) {
      entry["ok"] = false;
      entry["reason"] = e.what();
      log(entry);
      return false;
    }
    IsoOptions iso;
    iso.order_tolerance = window();
    bool ok = is_weakly_isomorphic(input_, art.piecewise_graph, iso);
    entry["ok"] = ok;
    if (!ok) entry["reason"] = "raster graph of the thickening differs from the input";
    log(entry);
    return ok;
  }

  bool algebraize(const Rational& delta) {
    const Frame fr = make_frame(box_);
    for (int deg : cfg_.degree_schedule) {
      if (deg > cfg_.max_degree) continue;
      json entry{{"stage", "fit"}, {"delta", qs(delta)}, {"degree", deg}};
      double residual = 0;
      BPoly f;
      try {
        f = fit_outer(fit_target(delta), delta, box_, fr, deg, cfg_.fit_grid, residual);
      } catch (const Error& e) {
        entry["ok"] = false;
        entry["reason"] = e.what();
        log(entry);
        continue;
      }
      entry["residual"] = residual;
      Attempt a = try_outer(f, deg);
      entry["ok"] = a.ok;
      if (!a.ok) entry["reason"] = a.reason;
      log(entry);
      if (a.ok) return true;
    }
    return false;
  }

  Attempt try_outer(BPoly f, int deg) {
    auto& art = out_.artifacts;
    const Rational& delta = art.params.delta;
    IsoOptions loose;
    loose.order_tolerance = window();

    // Numeric pre-screen of the fitted component.
    {
      DoublePoly df(f);
      VDigraph rg;
      try {
        rg = raster_graph(box_, cfg_.raster_resolution, base_.first.get_d(), base_.second.get_d(),
                          [&](double x, double y) { return df(x, y) > 0; });
      } catch (const Error& e) {
        return {false, std::string("pre-screen: ") + e.what()};
      }
      if (!is_weakly_isomorphic(art.piecewise_graph, rg, loose))
        return {false, "pre-screen: raster graph of the fit differs from the piecewise graph"};
    }

    // Pin the boundary points of each degree-1 arm on its vertex abscissa.
    std::vector<Tip> tips;
    std::vector<Point> pins;
    {
      DoublePoly df(f);
      for (size_t v = 0; v < g_.vertices.size(); ++v) {
        if (g_.degree(static_cast<int>(v)) != 1) continue;
        const auto& V = g_.vertices[v];
        const double p = V.x.get_d(), q = V.y.get_d();
        auto roots = numeric_roots_at(df, p, box_.ymin.get_d(), box_.ymax.get_d());
        int best = -1;
        double bestd = INFINITY;
        for (size_t k = 0; k + 1 < roots.size(); ++k) {
          if (df(p, (roots[k] + roots[k + 1]) / 2) <= 0) continue;
          double d = q < roots[k] ? roots[k] - q : (q > roots[k + 1] ? q - roots[k + 1] : 0);
          if (d < bestd) bestd = d, best = static_cast<int>(k);
        }
        if (best < 0 || bestd > delta.get_d())
          return {false, "the fitted arm of " + V.id + " does not reach its vertex abscissa"};
        Tip t;
        t.vertex = static_cast<int>(v);
        t.p = V.x;
        t.ylo = dyadic_round(roots[best], 24);
        t.yhi = dyadic_round(roots[best + 1], 24);
        const EEdge* e = nullptr;
        for (auto& ed : g_.edges)
          if (ed.src == t.vertex || ed.dst == t.vertex) e = &ed;
        auto pl = g_.polyline(*e);
        if (e->dst == t.vertex) std::reverse(pl.begin(), pl.end());
        t.side = pl[1].first > V.x ? -1 : 1;
        // The disc goes to the side away from the arm.
        t.prefer_lower = pl[1].second <= V.y;
        tips.push_back(t);
        pins.push_back({t.p, t.ylo});
        pins.push_back({t.p, t.yhi});
      }
    }
    f = pin_points(f, pins).primitive();

    // Exact certification of the outer curve alone.
    DomainSpec d;
    d.curves = {{"outer", f}};
    d.box = box_;
    bool based = false;
    for (auto& b : basepoint_candidates(art.complex))
      if (sgn(f.eval(b.first, b.second)) > 0) {
        d.bx = b.first;
        d.by = b.second;
        based = true;
        break;
      }
    if (!based) return {false, "no basepoint candidate is positive"};
    CurveReport cr = validate_curve_nonsingular(d.curves[0], box_);
    if (!cr.violations.empty()) return {false, cr.violations.front().tag + ": " + cr.violations.front().message};
    std::unique_ptr<Sweep> sw;
    try {
      sw = std::make_unique<Sweep>(d, cfg_.sweep);
    } catch (const Error& e) {
      return {false, std::string("sweep: ") + e.what()};
    }
    if (sw->touches_box()) return {false, "the fitted component reaches the working box"};
    const auto& cps = sw->crit_points();
    std::vector<int> folds;
    for (int ci : sw->closure_points()) {
      if (cps[ci].kind != CritKind::Fold) continue;
      if (!cps[ci].transverse) return {false, "degenerate fold on the fitted curve"};
      folds.push_back(ci);
    }
    std::vector<int> match(art.inventory.size(), -1);
    {
      std::vector<char> used(folds.size(), 0);
      int ndef = 0, nind = 0;
      for (int ci : folds) (sw->fold_kind(ci) == FoldKind::Definite ? ndef : nind)++;
      int idef = 0, iind = 0;
      for (auto& r : art.inventory) (r.kind == FoldKind::Definite ? idef : iind)++;
      if (ndef != idef || nind != iind)
        return {false, "fold inventory mismatch: fitted " + std::to_string(ndef) + " definite / " +
                           std::to_string(nind) + " indefinite, expected " + std::to_string(idef) + " / " +
                           std::to_string(iind)};
      for (size_t r = 0; r < art.inventory.size(); ++r) {
        const auto& rec = art.inventory[r];
        double bx = rec.at.first.get_d(), by = rec.at.second.get_d(), bestd = INFINITY;
        for (size_t k = 0; k < folds.size(); ++k) {
          if (used[k] || sw->fold_kind(folds[k]) != rec.kind) continue;
          auto x = cps[folds[k]].x, y = cps[folds[k]].y;
          double dd = std::max(std::abs(x.approx() - bx), std::abs(y.approx() - by));
          if (dd < bestd) bestd = dd, match[r] = static_cast<int>(k);
        }
        if (match[r] < 0 || bestd > window())
          return {false, "no fitted fold within the window of the " + std::string(to_string(rec.kind)) +
                             " fold at " + rec.vertex};
        used[match[r]] = 1;
      }
    }
    PRGraph pg = sw->graph();
    if (!is_weakly_isomorphic(art.piecewise_graph, pg.graph, loose))
      return {false, "exact graph of the fitted curve differs from the piecewise graph"};

    // Excisions.
    const ComponentMask mask(DoublePoly(f), box_, 2 * cfg_.raster_resolution, d.bx.get_d(), d.by.get_d());
    std::vector<Excision> ex;
    for (auto& t : tips) {
      std::string why;
      if (!place_tip(f, mask, t, ex, why)) return {false, why};
    }
    for (size_t r = 0; r < art.inventory.size(); ++r) {
      const auto& rec = art.inventory[r];
      if (rec.kind != FoldKind::Indefinite) continue;
      std::string why;
      auto fx = cps[folds[match[r]]].x, fy = cps[folds[match[r]]].y;
      if (!place_pocket(f, mask, rec, fx, fy, ex, why)) return {false, why};
    }

    // Final domain and exact verification.
    DomainSpec fin = d;
    for (auto& e : ex) fin.curves.push_back({e.id, conic(e.conic)});
    based = false;
    for (auto& b : basepoint_candidates(art.complex)) {
      bool pos = true;
      for (auto& c : fin.curves) pos = pos && sgn(c.f.eval(b.first, b.second)) > 0;
      if (pos) {
        fin.bx = b.first;
        fin.by = b.second;
        based = true;
        break;
      }
    }
    if (!based) return {false, "no basepoint candidate survives the excisions"};
    DomainReport rep = validate_domain(fin);
    if (!rep.ok()) return {false, "final domain: " + rep.violations.front().tag + ": " + rep.violations.front().message};
    Sweep fsw(fin, cfg_.sweep);
    PRGraph res = fsw.graph();
    if (!is_weakly_isomorphic(input_, res.graph))
      return {false, "the exact graph of the final domain is not weakly isomorphic to the input"};

    {
      const VDigraph a = normalize(input_), b = normalize(res.graph);
      out_.witness.clear();
      if (auto m = find_isomorphism(a, b))
        for (size_t i = 0; i < m->size(); ++i) out_.witness.push_back({a.vertices[i].id, b.vertices[(*m)[i]].id});
    }
    art.boundary_components =
        static_cast<int>(pg.graph.edges.size()) - static_cast<int>(pg.graph.vertices.size()) + 2;
    art.fit_degree = deg;
    art.outer = f;
    art.excisions = ex;
    out_.domain = fin;
    out_.graph = res.graph;
    out_.algebraic = true;
    out_.verified = true;
    return {true, ""};
  }

  // The complex with every degree-1 arm prolonged by about delta along its
  // last piece, so that low-degree fits still reach the vertex abscissa.
  std::vector<Segment> fit_target(const Rational& delta) const {
    auto cx = out_.artifacts.complex;
    for (size_t v = 0; v < g_.vertices.size(); ++v) {
      if (g_.degree(static_cast<int>(v)) != 1) continue;
      const auto& V = g_.vertices[v];
      for (auto& e : g_.edges) {
        if (e.src != static_cast<int>(v) && e.dst != static_cast<int>(v)) continue;
        auto pl = g_.polyline(e);
        if (e.dst == static_cast<int>(v)) std::reverse(pl.begin(), pl.end());
        Rational dx = V.x - pl[1].first, dy = V.y - pl[1].second;
        Rational k = delta / dyadic_round(std::hypot(dx.get_d(), dy.get_d()), 20);
        cx.push_back({{V.x, V.y}, {V.x + k * dx, V.y + k * dy}, "overshoot", V.id, ""});
      }
    }
    return cx;
  }

  // Solutions are searched in the bounding box of the conic.
  bool two_transverse_points(const BPoly& f, const ConicSpec& c) const {
    const Rational ax = sqrt_upper(c.r / c.a1), ay = sqrt_upper(c.r / c.a2);
    Box b{c.cx - ax, c.cx + ax, c.cy - ay, c.cy + ay};
    auto roots = solve_system(f, interior_poly(c), b);
    return roots.size() == 2 && roots[0].transverse && roots[1].transverse;
  }

  bool disjoint_from(const ConicSpec& c, const std::vector<Excision>& ex) {
    for (auto& e : ex)
      if (!conics_disjoint(c, e.conic, box_)) return false;
    return true;
  }

  bool place_tip(const BPoly& f, const ComponentMask& mask, const Tip& t, std::vector<Excision>& ex,
                 std::string& why) {
    const auto& V = g_.vertices[t.vertex];
    const Rational w = t.yhi - t.ylo;
    // Circles through P = (p, y) with centre P + s(-+u, +-v) and radius R s,
    // for Pythagorean (u, v, R). The height v s is a multiple of the fibre
    // width so that the vertical tangent clears the arm.
    static const int triples[][3] = {{3, 4, 5}, {4, 3, 5}, {12, 5, 13}, {8, 15, 17}, {5, 12, 13}, {24, 7, 25}};
    int numeric_rejects = 0;
    for (bool lower : {t.prefer_lower, !t.prefer_lower})
      for (auto& [u, v, R] : triples)
        for (auto [a, b] : {std::pair{5, 4}, {3, 2}, {2, 1}, {3, 1}}) {
        Rational s = cfg_.excision_scale * w * Rational(a, b) / v;
        s.canonicalize();
        ConicSpec c;
        c.cx = t.p + u * s * t.side;
        c.cy = lower ? Rational(t.ylo + v * s) : Rational(t.yhi - v * s);
        c.r = R * R * s * s;
        c.sign = ConicSign::ExteriorPositive;
        json entry{{"stage", "tip"}, {"vertex", V.id}, {"s", qs(s)}, {"uvR", {u, v, R}}, {"lower", lower}};
        auto reject = [&](const std::string& r) {
          entry["ok"] = false;
          entry["reason"] = r;
          log(entry);
        };
        const Rational rad = R * s;
        // Two membership changes along the circle, and the vertical tangent
        // on the arm side outside the component.
        if (crossings_along(mask, c) != 2 || mask(Rational(c.cx - t.side * rad).get_d(), c.cy.get_d())) {
          ++numeric_rejects;
          continue;
        }
        const Rational py = lower ? t.ylo : t.yhi;
        if (!transverse_at(f, interior_poly(c), t.p, py)) {
          reject("tangency at the pinned point");
          continue;
        }
        if (!disjoint_from(c, ex)) {
          reject("meets another excision");
          continue;
        }
        if (!two_transverse_points(f, c)) {
          reject("exact intersection with the outer curve is not two transverse points");
          continue;
        }
        entry["ok"] = true;
        entry["numeric_rejects"] = numeric_rejects;
        log(entry);
        ex.push_back({"tip_" + V.id, "tip", V.id, c});
        return true;
      }
    log({{"stage", "tip"}, {"vertex", V.id}, {"ok", false}, {"numeric_rejects", numeric_rejects}});
    why = "no admissible tip circle at " + V.id;
    return false;
  }

  bool place_pocket(const BPoly& f, const ComponentMask& mask, const FoldRecord& rec, AlgebraicReal fx, AlgebraicReal fy,
                    std::vector<Excision>& ex, std::string& why) {
    const auto& art = out_.artifacts;
    const auto& nb = *std::find_if(art.neighborhoods.begin(), art.neighborhoods.end(),
                                   [&](const Neighborhood& n) { return n.vertex == rec.vertex; });
    fx.refine_bits(40);
    fy.refine_bits(40);
    ConicSpec c;
    c.cx = dyadic_round(fx.interval().lo, 24);
    c.cy = dyadic_round(fy.interval().lo, 24);
    Rational A = rec.side < 0 ? Rational(nb.p - c.cx) : Rational(c.cx - nb.p);
    if (sgn(A) <= 0) {
      why = "the fitted pocket at " + rec.vertex + " passes the vertex abscissa";
      return false;
    }
    const Rational far = 2 * c.cx - nb.p;
    for (int k : {2, 4, 8, 16}) {
      Rational b = cfg_.excision_scale * art.params.delta / k;
      Rational ratio = A / b;
      c.a1 = 1;
      c.a2 = ratio * ratio;
      c.r = A * A;
      c.sign = ConicSign::ExteriorPositive;
      json entry{{"stage", "pocket"}, {"vertex", rec.vertex}, {"semi_minor", qs(b)}};
      auto reject = [&](const std::string& r) {
        entry["ok"] = false;
        entry["reason"] = r;
        log(entry);
      };
      if (crossings_along(mask, c) != 2) {
        reject("numeric crossing count");
        continue;
      }
      // The right-hand vertex must sit in the region, the other one in the pocket.
      if (sgn(f.eval(nb.p, c.cy)) <= 0 || !mask(nb.p.get_d(), c.cy.get_d()) || mask(far.get_d(), c.cy.get_d())) {
        reject("vertex placement");
        continue;
      }
      if (!disjoint_from(c, ex)) {
        reject("meets another excision");
        continue;
      }
      if (!two_transverse_points(f, c)) {
        reject("exact intersection with the outer curve is not two transverse points");
        continue;
      }
      entry["ok"] = true;
      log(entry);
      std::string side = rec.side < 0 ? "L" : "R";
      ex.push_back({"pocket_" + rec.vertex + "_" + side + std::to_string(ex.size()), "pocket", rec.vertex, c});
      return true;
    }
    why = "no admissible pocket ellipse at " + rec.vertex;
    return false;
  }
};

json segment_json(const Segment& s) {
  json j{{"a", point_json(s.a)}, {"b", point_json(s.b)}, {"role", s.role}, {"owner", s.owner}};
  if (!s.at.empty()) j["at"] = s.at;
  return j;
}

}  // namespace

Realization realize(const EmbeddedGraph& g, const RealizationConfig& cfg) { return Realizer(g, cfg).run(); }

json realization_report(const EmbeddedGraph& g, const Realization& r) {
  const auto& a = r.artifacts;
  json j;
  j["format"] = kFormat;
  j["kind"] = "realization";
  j["mode"] = r.algebraic ? "algebraic" : "piecewise";
  j["verified"] = r.verified;
  if (!r.verified) j["failure"] = r.failure;
  j["input"] = embedded_to_json(g);
  j["parameters"] = {{"eps1", qs(a.params.eps1)},
                     {"eps2", qs(a.params.eps2)},
                     {"eps_prime", qs(a.params.eps_prime)},
                     {"delta", qs(a.params.delta)}};
  json nbs = json::array();
  for (auto& nb : a.neighborhoods) {
    auto lands = [](const std::vector<Landing>& ls) {
      json out = json::array();
      for (auto& l : ls) out.push_back({{"edge", l.edge}, {"clip", point_json(l.clip)}, {"height", qs(l.height)}});
      return out;
    };
    nbs.push_back({{"vertex", nb.vertex},
                   {"box", {qs(nb.box.xmin), qs(nb.box.xmax), qs(nb.box.ymin), qs(nb.box.ymax)}},
                   {"left", lands(nb.left)},
                   {"right", lands(nb.right)},
                   {"stem", {qs(nb.stem_lo), qs(nb.stem_hi)}}});
  }
  j["neighborhoods"] = nbs;
  json vert = json::array(), cx = json::array();
  for (auto& s : a.vertical) vert.push_back(segment_json(s));
  for (auto& s : a.complex) cx.push_back(segment_json(s));
  j["vertical_segments"] = vert;
  j["complex"] = cx;
  j["ledger"] = a.ledger;
  json inv = json::array();
  for (auto& f : a.inventory)
    inv.push_back({{"vertex", f.vertex}, {"kind", to_string(f.kind)}, {"at", point_json(f.at)}, {"side", f.side}});
  j["fold_inventory"] = inv;
  j["piecewise_graph"] = graph_to_json(a.piecewise_graph);
  if (r.algebraic && r.verified) {
    j["fit_degree"] = a.fit_degree;
    json exs = json::array();
    for (auto& e : a.excisions)
      exs.push_back({{"id", e.id},
                     {"role", e.role},
                     {"vertex", e.vertex},
                     {"center", {qs(e.conic.cx), qs(e.conic.cy)}},
                     {"a1", qs(e.conic.a1)},
                     {"a2", qs(e.conic.a2)},
                     {"r", qs(e.conic.r)}});
    j["excisions"] = exs;
    j["boundary_components"] = a.boundary_components;
    json wit = json::array();
    for (auto& [u, v] : r.witness) wit.push_back({{"input", u}, {"domain", v}});
    j["witness"] = wit;
    j["domain"] = domain_to_json(r.domain);
  }
  j["graph"] = graph_to_json(r.graph);
  j["transcript"] = a.transcript;
  return j;
}

}  // namespace prkit

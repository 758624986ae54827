#include "prkit/system.hpp"

#include <algorithm>

#include "prkit/error.hpp"
#include "prkit/resultant.hpp"

namespace prkit {

namespace {

bool strictly_inside(const Interval& a, const Interval& b) { return b.lo < a.lo && a.hi < b.hi; }

Rational pow2(int e) {
  Rational r(1);
  if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), e);
  else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -e);
  return r;
}

// A closed interval around root i that contains no other root of the list.
Interval separated_box(std::vector<AlgebraicReal>& roots, size_t i, const Rational& w) {
  AlgebraicReal& r = roots[i];
  if (!r.is_exact()) {
    // keep exact neighbours off the closed interval
    if (i > 0 && roots[i - 1].is_exact())
      while (!r.is_exact() && r.lo() <= roots[i - 1].lo()) r.bisect();
    if (i + 1 < roots.size() && roots[i + 1].is_exact())
      while (!r.is_exact() && r.hi() >= roots[i + 1].lo()) r.bisect();
    if (!r.is_exact()) return r.interval();
  }
  const Rational& a = r.lo();
  Rational lo = a - w, hi = a + w;
  if (i > 0) {
    AlgebraicReal& p = roots[i - 1];
    while (p.hi() >= a) p.bisect();
    lo = std::max(lo, p.hi());
    if (p.is_exact()) lo = std::max(lo, Rational((p.lo() + a) / 2));
  }
  if (i + 1 < roots.size()) {
    AlgebraicReal& n = roots[i + 1];
    while (n.lo() <= a) n.bisect();
    hi = std::min(hi, n.lo());
    if (n.is_exact()) hi = std::min(hi, Rational((n.lo() + a) / 2));
  }
  return {lo, hi};
}

}  // namespace

bool krawczyk(const BPoly& f, const BPoly& g, const Interval& X, const Interval& Y) {
  if (X.lo == X.hi || Y.lo == Y.hi) return false;
  Rational mx = X.mid(), my = Y.mid();
  BPoly fx = f.dx(), fy = f.dy(), gx = g.dx(), gy = g.dy();
  Rational a = fx.eval(mx, my), b = fy.eval(mx, my), c = gx.eval(mx, my), d = gy.eval(mx, my);
  Rational det = a * d - b * c;
  if (sgn(det) == 0) return false;
  // Y0 = J(m)^{-1}
  Rational y11 = d / det, y12 = -b / det, y21 = -c / det, y22 = a / det;
  Rational F = f.eval(mx, my), G = g.eval(mx, my);
  Rational kx = mx - (y11 * F + y12 * G);
  Rational ky = my - (y21 * F + y22 * G);
  Interval A = fx.eval(X, Y), B = fy.eval(X, Y), C = gx.eval(X, Y), D = gy.eval(X, Y);
  // M = I - Y0 * J(X)
  Interval one(Rational(1));
  Interval m11 = one - (y11 * A + y12 * C);
  Interval m12 = Interval(Rational(0)) - (y11 * B + y12 * D);
  Interval m21 = Interval(Rational(0)) - (y21 * A + y22 * C);
  Interval m22 = one - (y21 * B + y22 * D);
  Interval dx(X.lo - mx, X.hi - mx), dy(Y.lo - my, Y.hi - my);
  Interval KX = Interval(kx) + m11 * dx + m12 * dy;
  Interval KY = Interval(ky) + m21 * dx + m22 * dy;
  return strictly_inside(KX, X) && strictly_inside(KY, Y);
}

namespace {

std::vector<SystemRoot> solve_with(const BPoly& f, const BPoly& g, const UPoly& rx, const UPoly& ry,
                                   const Box& box, const SolveOptions& opt) {
  std::vector<AlgebraicReal> xs, ys;
  for (auto& r : isolate_real_roots(rx, Interval(box.xmin, box.xmax))) xs.push_back(r.value);
  for (auto& r : isolate_real_roots(ry, Interval(box.ymin, box.ymax))) ys.push_back(r.value);

  struct Cand {
    size_t i, j;
    bool done = false, keep = true, certified = false, transverse = false;
  };
  std::vector<Cand> cands;
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < ys.size(); ++j) cands.push_back({i, j});

  BPoly fx = f.dx(), fy = f.dy(), gx = g.dx(), gy = g.dy();
  for (int bits = 2; bits <= opt.max_bits; bits += 2) {
    const Rational w = pow2(-bits);
    bool pending = false;
    for (auto& c : cands) {
      if (c.done) continue;
      xs[c.i].refine(w);
      ys[c.j].refine(w);
      Interval X = separated_box(xs, c.i, w), Y = separated_box(ys, c.j, w);
      if (f.eval(X, Y).sign() != 0 || g.eval(X, Y).sign() != 0) {
        c.done = true;
        c.keep = false;
        continue;
      }
      if (krawczyk(f, g, X, Y)) {
        c.done = c.certified = c.transverse = true;
        continue;
      }
      pending = true;
    }
    if (!pending) break;
  }
  std::vector<SystemRoot> out;
  for (auto& c : cands) {
    if (!c.keep) continue;
    SystemRoot r{xs[c.i], ys[c.j], c.transverse, c.certified};
    if (!c.certified) {
      // Transverse if the Jacobian is provably nonzero at the finest box.
      Interval X = separated_box(xs, c.i, pow2(-opt.max_bits));
      Interval Y = separated_box(ys, c.j, pow2(-opt.max_bits));
      Interval J = fx.eval(X, Y) * gy.eval(X, Y) - fy.eval(X, Y) * gx.eval(X, Y);
      r.transverse = J.sign() != 0;
    }
    out.push_back(std::move(r));
  }
  return out;
}

void require_finite(const UPoly& rx, const UPoly& ry) {
  if (rx.is_zero() || ry.is_zero())
    throw Error("positive-dimensional", "the two curves share a component");
}

}  // namespace

std::vector<SystemRoot> solve_system(const BPoly& f, const BPoly& g, const Box& box,
                                     const SolveOptions& opt) {
  UPoly rx = resultant_y(f, g), ry = resultant_x(f, g);
  require_finite(rx, ry);
  return solve_with(f, g, rx, ry, box, opt);
}

std::vector<SystemRoot> solve_system_global(const BPoly& f, const BPoly& g, const SolveOptions& opt) {
  UPoly rx = resultant_y(f, g), ry = resultant_x(f, g);
  require_finite(rx, ry);
  Rational bx = rx.degree() > 0 ? root_bound(zp::from_rational(rx)) : Rational(1);
  Rational by = ry.degree() > 0 ? root_bound(zp::from_rational(ry)) : Rational(1);
  return solve_with(f, g, rx, ry, Box{-bx, bx, -by, by}, opt);
}

}  // namespace prkit

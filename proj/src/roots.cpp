#include "prkit/roots.hpp"

#include <algorithm>

#include "prkit/error.hpp"

namespace prkit {

namespace {

std::shared_ptr<const ZPoly> linear_poly(const Rational& q) {
  return std::make_shared<const ZPoly>(std::vector<Integer>{-q.get_num(), q.get_den()});
}

}  // namespace

AlgebraicReal::AlgebraicReal(const Rational& exact)
    : poly_(linear_poly(exact)), lo_(exact), hi_(exact) {}

AlgebraicReal::AlgebraicReal(std::shared_ptr<const ZPoly> poly, Rational lo, Rational hi)
    : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ != hi_) {
    sign_lo_ = zp::sign_at(*poly_, lo_);
    if (sign_lo_ == 0) {
      hi_ = lo_;
    } else if (zp::sign_at(*poly_, hi_) == 0) {
      lo_ = hi_;
    }
  }
}

double AlgebraicReal::approx() const { return Rational((lo_ + hi_) / 2).get_d(); }

void AlgebraicReal::bisect() {
  if (is_exact()) return;
  Rational m = (lo_ + hi_) / 2;
  int s = zp::sign_at(*poly_, m);
  if (s == 0) {
    lo_ = hi_ = m;
  } else if (s == sign_lo_) {
    lo_ = m;
  } else {
    hi_ = m;
  }
}

void AlgebraicReal::refine(const Rational& width) {
  while (!is_exact() && hi_ - lo_ > width) bisect();
}

void AlgebraicReal::refine_bits(int bits) {
  Rational w(1);
  mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), bits);
  refine(w);
}

Rational AlgebraicReal::representative() const {
  if (is_exact()) return lo_;
  return (lo_ + hi_) / 2;
}

int AlgebraicReal::compare(const Rational& q) {
  for (;;) {
    if (is_exact()) return sgn(lo_ - q) ;
    if (q <= lo_) return 1;
    if (q >= hi_) return -1;
    int s = zp::sign_at(*poly_, q);
    if (s == 0) return 0;
    // root lies on the side where the sign differs from q's sign
    if (s == sign_lo_) {
      lo_ = q;
      return 1;
    }
    hi_ = q;
    return -1;
  }
}

int compare(AlgebraicReal& a, AlgebraicReal& b) {
  if (a.is_exact()) return -b.compare(a.lo());
  if (b.is_exact()) return a.compare(b.lo());
  for (int round = 0; round < 64; ++round) {
    if (a.hi() <= b.lo()) return -1;
    if (b.hi() <= a.lo()) return 1;
    if (round >= 8) break;
    a.bisect();
    b.bisect();
    if (a.is_exact()) return -b.compare(a.lo());
    if (b.is_exact()) return a.compare(b.lo());
  }
  // Overlapping after refinement: decide equality through the gcd.
  ZPoly g = zp::gcd(a.poly(), b.poly());
  bool candidate = g.degree() >= 1 &&
                   zp::sign_at(g, a.lo()) * zp::sign_at(g, a.hi()) < 0;
  if (candidate) {
    // a is a root of b's polynomial; equal iff it lies in b's interval.
    for (;;) {
      if (b.lo() < a.lo() && a.hi() < b.hi()) return 0;
      if (a.hi() <= b.lo()) return -1;
      if (b.hi() <= a.lo()) return 1;
      a.bisect();
      if (a.is_exact()) return -b.compare(a.lo());
    }
  }
  for (;;) {
    if (a.hi() <= b.lo()) return -1;
    if (b.hi() <= a.lo()) return 1;
    a.bisect();
    b.bisect();
    if (a.is_exact()) return -b.compare(a.lo());
    if (b.is_exact()) return a.compare(b.lo());
  }
}

Rational root_bound(const ZPoly& p) {
  // Cauchy: 1 + max |c_i / c_n|, rounded up to a power of two.
  Rational m = 0;
  Rational ln = abs(Rational(p.lead()));
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(Rational(p.c[i])) / ln;
    if (r > m) m = r;
  }
  m += 1;
  Rational b = 1;
  while (b <= m) b *= 2;
  return b;
}

namespace {

// p(a + (b - a) x) as a primitive integer polynomial.
ZPoly affine(const ZPoly& p, const Rational& a, const Rational& w) {
  // Horner over rational polynomials in x.
  UPoly lin(std::vector<Rational>{a, w});
  UPoly acc;
  for (int k = p.degree(); k >= 0; --k) acc = acc * lin + UPoly::constant(Rational(p.c[k]));
  return zp::from_rational(acc);
}

void strip_twos(ZPoly& p) {
  if (p.is_zero()) return;
  unsigned long v = ~0UL;
  for (const auto& c : p.c)
    if (sgn(c) != 0) v = std::min(v, mpz_scan1(c.get_mpz_t(), 0));
  if (v == 0 || v == ~0UL) return;
  for (auto& c : p.c) mpz_fdiv_q_2exp(c.get_mpz_t(), c.get_mpz_t(), v);
}

// Upper bound on roots of p in (0, 1) via Descartes on (x+1)^n p(1/(x+1)).
int descartes01(const ZPoly& p) {
  ZPoly r;
  r.c.assign(p.c.rbegin(), p.c.rend());
  // p may have lost degree through trimming; reversing a trimmed vector
  // still gives x^deg p(1/x), which is all the test needs.
  r.trim();
  return zp::sign_variations(zp::taylor_shift1(r));
}

struct Task {
  ZPoly p;  // p(x) = P(a + w x), x in (0, 1)
  Rational a, w;
};

// Isolates roots of squarefree P in (lo, hi). Returns false and sets `found`
// when a rational root hits a bisection point.
bool descartes_isolate(const ZPoly& P, const Rational& lo, const Rational& hi,
                       std::vector<std::pair<Rational, Rational>>& out, Rational& found) {
  std::vector<Task> stack;
  stack.push_back({affine(P, lo, hi - lo), lo, hi - lo});
  while (!stack.empty()) {
    Task t = std::move(stack.back());
    stack.pop_back();
    int v = descartes01(t.p);
    if (v == 0) continue;
    if (v == 1) {
      out.emplace_back(t.a, t.a + t.w);
      continue;
    }
    const int n = t.p.degree();
    // left half: 2^n p(x/2)
    ZPoly left = t.p;
    for (int i = 0; i <= n; ++i) mpz_mul_2exp(left.c[i].get_mpz_t(), left.c[i].get_mpz_t(), n - i);
    Integer s = 0;
    for (const auto& c : left.c) s += c;
    Rational hw = t.w / 2;
    if (sgn(s) == 0) {
      found = t.a + hw;
      return false;
    }
    ZPoly right = zp::taylor_shift1(left);
    strip_twos(left);
    strip_twos(right);
    stack.push_back({std::move(right), t.a + hw, hw});
    stack.push_back({std::move(left), t.a, hw});
  }
  return true;
}

}  // namespace

std::vector<AlgebraicReal> isolate_squarefree(const ZPoly& p0, const std::optional<Interval>& window) {
  if (p0.is_zero()) throw Error("zero-polynomial", "root isolation of the zero polynomial");
  std::vector<AlgebraicReal> result;
  if (p0.degree() == 0) return result;
  ZPoly p = zp::primitive(p0);
  std::vector<Rational> rational_roots;
  auto deflate = [&](const Rational& r) {
    rational_roots.push_back(r);
    ZPoly lin(std::vector<Integer>{-r.get_num(), r.get_den()});
    p = zp::divide_exact(p, lin);
  };
  if (window) {
    for (const Rational& e : {window->lo, window->hi})
      if (p.degree() >= 1 && zp::sign_at(p, e) == 0) deflate(e);
  }
  std::vector<std::pair<Rational, Rational>> iso;
  for (;;) {
    iso.clear();
    if (p.degree() < 1) break;
    if (zp::sign_at(p, Rational(0)) == 0) {
      deflate(Rational(0));
      continue;
    }
    Rational b = root_bound(p);
    Rational found;
    std::vector<std::pair<Rational, Rational>> neg, pos;
    if (!descartes_isolate(p, -b, Rational(0), neg, found) ||
        !descartes_isolate(p, Rational(0), b, pos, found)) {
      deflate(found);
      continue;
    }
    iso = neg;
    iso.insert(iso.end(), pos.begin(), pos.end());
    break;
  }
  auto shared = std::make_shared<const ZPoly>(p);
  for (const auto& r : rational_roots)
    if (!window || (window->lo <= r && r <= window->hi)) result.emplace_back(r);
  for (auto& [lo, hi] : iso) {
    AlgebraicReal a(shared, lo, hi);
    if (window) {
      if (a.compare(window->lo) < 0) continue;
      if (a.compare(window->hi) > 0) continue;
    }
    result.push_back(std::move(a));
  }
  std::sort(result.begin(), result.end(), [](const AlgebraicReal& x, const AlgebraicReal& y) {
    AlgebraicReal a = x, b = y;
    return compare(a, b) < 0;
  });
  return result;
}

std::vector<IsolatedRoot> isolate_real_roots(const UPoly& q, const std::optional<Interval>& window) {
  if (q.is_zero()) throw Error("zero-polynomial", "root isolation of the zero polynomial");
  ZPoly p = zp::from_rational(q);
  ZPoly sf = zp::squarefree(p);
  auto roots = isolate_squarefree(sf, window);
  // Multiplicity chain: g_1 = gcd(p, p'), g_{k+1} = gcd(g_k, g_k').
  std::vector<ZPoly> chain;
  ZPoly g = zp::gcd(p, zp::derivative(p));
  while (g.degree() >= 1) {
    chain.push_back(zp::squarefree(g));
    g = zp::gcd(g, zp::derivative(g));
  }
  std::vector<IsolatedRoot> out;
  for (auto& r : roots) {
    int mult = 1;
    for (const auto& h : chain) {
      bool root_here;
      if (r.is_exact()) {
        root_here = zp::sign_at(h, r.lo()) == 0;
      } else {
        root_here = zp::sign_at(h, r.lo()) * zp::sign_at(h, r.hi()) < 0;
      }
      if (!root_here) break;
      ++mult;
    }
    out.push_back({r, mult});
  }
  return out;
}

std::vector<ZPoly> sturm_sequence(const ZPoly& p0) {
  std::vector<ZPoly> seq;
  ZPoly p = zp::primitive(p0);
  if (p.is_zero()) return seq;
  seq.push_back(p);
  ZPoly d = zp::primitive(zp::derivative(p));
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (seq.back().degree() > 0) {
    int ms = 1;
    ZPoly r = zp::prem(seq[seq.size() - 2], seq.back(), &ms);
    if (r.is_zero()) break;
    Integer c = zp::content(r);
    for (auto& v : r.c) {
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
      if (ms > 0) v = -v;
    }
    seq.push_back(std::move(r));
  }
  return seq;
}

namespace {
int variations_at(const std::vector<ZPoly>& seq, const Rational& x) {
  int v = 0, last = 0;
  for (const auto& s : seq) {
    int sg = zp::sign_at(s, x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++v;
    last = sg;
  }
  return v;
}
}  // namespace

int sturm_count(const std::vector<ZPoly>& seq, const Rational& a, const Rational& b) {
  return variations_at(seq, a) - variations_at(seq, b);
}

}  // namespace prkit

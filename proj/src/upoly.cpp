#include "prkit/upoly.hpp"

#include <sstream>

#include "prkit/error.hpp"

namespace prkit {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }

UPoly UPoly::monomial(const Rational& c, int k) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational UPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return c_[k];
}

Rational UPoly::lead() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational UPoly::eval(const Rational& t) const {
  Rational acc = 0;
  for (int k = degree(); k >= 0; --k) {
    acc *= t;
    acc += c_[k];
  }
  return acc;
}

Interval UPoly::eval(const Interval& t) const {
  Interval acc(Rational(0));
  for (int k = degree(); k >= 0; --k) {
    acc = acc * t;
    acc.lo += c_[k];
    acc.hi += c_[k];
  }
  return acc;
}

UPoly UPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Rational> d(degree());
  for (int k = 1; k <= degree(); ++k) d[k - 1] = c_[k] * k;
  return UPoly(std::move(d));
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k < c_.size()) r[k] += c_[k];
    if (k < o.c_.size()) r[k] += o.c_[k];
  }
  return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator-() const {
  std::vector<Rational> r(c_);
  for (auto& v : r) v = -v;
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const Rational& s) const {
  std::vector<Rational> r(c_);
  for (auto& v : r) v *= s;
  return UPoly(std::move(r));
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (sgn(c_[k]) == 0) continue;
    Rational a = abs(c_[k]);
    if (!first) os << (sgn(c_[k]) < 0 ? " - " : " + ");
    else if (sgn(c_[k]) < 0) os << "-";
    first = false;
    bool unit = (a == 1);
    if (!unit || k == 0) os << a.get_str();
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

namespace zp {

ZPoly from_rational(const UPoly& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.emplace_back(c.get_num() * (l / c.get_den()));
  return primitive(ZPoly(std::move(out)));
}

UPoly to_rational(const ZPoly& p) {
  std::vector<Rational> out;
  out.reserve(p.c.size());
  for (const auto& c : p.c) out.emplace_back(c);
  return UPoly(std::move(out));
}

Integer content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& c : p.c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly primitive(const ZPoly& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (g == 1) return p;
  ZPoly r = p;
  for (auto& c : r.c) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return r;
}

ZPoly derivative(const ZPoly& p) {
  if (p.degree() < 1) return {};
  std::vector<Integer> d(p.degree());
  for (int k = 1; k <= p.degree(); ++k) d[k - 1] = p.c[k] * k;
  return ZPoly(std::move(d));
}

int sign_at(const ZPoly& p, const Rational& q) {
  if (p.is_zero()) return 0;
  const Integer& n = q.get_num();
  const Integer& d = q.get_den();
  // sum c_i n^i d^(D-i) by homogeneous Horner
  Integer acc = p.c.back();
  Integer dpow = d;
  for (int i = p.degree() - 1; i >= 0; --i) {
    acc *= n;
    if (sgn(p.c[i]) != 0) acc += p.c[i] * dpow;
    if (i > 0) dpow *= d;
  }
  return sgn(acc);
}

Interval eval(const ZPoly& p, const Interval& t) {
  Interval acc(Rational(0));
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * t;
    acc.lo += p.c[k];
    acc.hi += p.c[k];
  }
  return acc;
}

ZPoly prem(const ZPoly& a, const ZPoly& b, int* multiplier_sign) {
  if (b.is_zero()) throw Error("internal", "prem by zero polynomial");
  std::vector<Integer> r = a.c;
  const int db = b.degree();
  const Integer& lcb = b.lead();
  int steps = 0;
  int dr = static_cast<int>(r.size()) - 1;
  while (dr >= db) {
    Integer lr = r[dr];
    int shift = dr - db;
    for (auto& v : r) v *= lcb;
    for (int k = 0; k <= db; ++k) r[k + shift] -= lr * b.c[k];
    ++steps;
    r.pop_back();
    while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
    dr = static_cast<int>(r.size()) - 1;
  }
  if (multiplier_sign) *multiplier_sign = (sgn(lcb) < 0 && (steps % 2 == 1)) ? -1 : 1;
  return ZPoly(std::move(r));
}

namespace {

using u64 = unsigned long long;
using u128 = unsigned __int128;
constexpr u64 kPrime = (1ULL << 61) - 1;

u64 mulmod(u64 a, u64 b) {
  u128 z = static_cast<u128>(a) * b;
  u64 lo = static_cast<u64>(z & kPrime);
  u64 hi = static_cast<u64>(z >> 61);
  u64 s = lo + hi;
  if (s >= kPrime) s -= kPrime;
  return s;
}

u64 powmod(u64 a, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::vector<u64> reduce(const ZPoly& p) {
  std::vector<u64> out(p.c.size());
  Integer m(std::to_string(kPrime));
  Integer t;
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    mpz_fdiv_r(t.get_mpz_t(), p.c[i].get_mpz_t(), m.get_mpz_t());
    out[i] = std::stoull(t.get_str());
  }
  return out;
}

int modular_gcd_degree(std::vector<u64> a, std::vector<u64> b) {
  auto trim = [](std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    u64 inv = powmod(b.back(), kPrime - 2);
    while (a.size() >= b.size()) {
      u64 f = mulmod(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) {
        u64 sub = mulmod(f, b[k]);
        u64& v = a[k + shift];
        v = v >= sub ? v - sub : v + kPrime - sub;
      }
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace

ZPoly gcd(const ZPoly& a0, const ZPoly& b0) {
  if (a0.is_zero()) return primitive(b0);
  if (b0.is_zero()) return primitive(a0);
  ZPoly a = primitive(a0.degree() >= b0.degree() ? a0 : b0);
  ZPoly b = primitive(a0.degree() >= b0.degree() ? b0 : a0);
  if (b.degree() == 0) return ZPoly({Integer(1)});
  {
    auto am = reduce(a), bm = reduce(b);
    if (am.back() != 0 && bm.back() != 0 && modular_gcd_degree(am, bm) == 0)
      return ZPoly({Integer(1)});
  }
  while (!b.is_zero()) {
    ZPoly r = prem(a, b);
    a = std::move(b);
    b = primitive(r);
    if (b.degree() == 0) return ZPoly({Integer(1)});
  }
  if (sgn(a.lead()) < 0)
    for (auto& c : a.c) c = -c;
  return a;
}

ZPoly divide_exact(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw Error("internal", "division by zero polynomial");
  if (a.degree() < b.degree()) {
    if (a.is_zero()) return {};
    throw Error("internal", "inexact polynomial division");
  }
  // Over Q, then clear denominators.
  std::vector<Rational> r(a.c.begin(), a.c.end());
  std::vector<Rational> q(a.degree() - b.degree() + 1);
  Rational lb(b.lead());
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rational f = r[k + b.degree()] / lb;
    q[k] = f;
    if (sgn(f) == 0) continue;
    for (int i = 0; i <= b.degree(); ++i) r[k + i] -= f * Rational(b.c[i]);
  }
  for (const auto& v : r)
    if (sgn(v) != 0) throw Error("internal", "inexact polynomial division");
  return from_rational(UPoly(std::move(q)));
}

ZPoly squarefree(const ZPoly& p) {
  ZPoly pp = primitive(p);
  if (pp.degree() < 1) return pp;
  ZPoly g = gcd(pp, derivative(pp));
  if (g.degree() == 0) return pp;
  return divide_exact(pp, g);
}

ZPoly taylor_shift1(const ZPoly& p) {
  std::vector<Integer> c = p.c;
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < n - 1; ++i)
    for (int k = n - 2; k >= i; --k) c[k] += c[k + 1];
  return ZPoly(std::move(c));
}

int sign_variations(const ZPoly& p) {
  int v = 0, last = 0;
  for (const auto& c : p.c) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace zp
}  // namespace prkit

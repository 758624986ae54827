#include "prkit/bpoly.hpp"

#include <algorithm>
#include <sstream>

namespace prkit {

BPoly::BPoly(Terms terms) {
  for (auto& [k, c] : terms)
    if (sgn(c) != 0) terms_.emplace(k, c);
}

BPoly BPoly::constant(const Rational& c) { return monomial(c, 0, 0); }

BPoly BPoly::monomial(const Rational& c, int i, int j) {
  BPoly r;
  r.add_term(i, j, c);
  return r;
}

BPoly BPoly::from_x(const UPoly& p) {
  BPoly r;
  for (int k = 0; k <= p.degree(); ++k) r.add_term(k, 0, p.coeff(k));
  return r;
}

BPoly BPoly::from_y(const UPoly& p) {
  BPoly r;
  for (int k = 0; k <= p.degree(); ++k) r.add_term(0, k, p.coeff(k));
  return r;
}

void BPoly::add_term(int i, int j, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational BPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

int BPoly::degree() const {
  int d = -1;
  for (auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
  return d;
}

int BPoly::degree_x() const {
  int d = -1;
  for (auto& [k, c] : terms_) d = std::max(d, k.first);
  return d;
}

int BPoly::degree_y() const {
  int d = -1;
  for (auto& [k, c] : terms_) d = std::max(d, k.second);
  return d;
}

Rational BPoly::eval(const Rational& x, const Rational& y) const {
  // Horner in x for each y-row, then Horner in y.
  auto rows = coeffs_in_y();
  Rational acc = 0;
  for (int j = static_cast<int>(rows.size()) - 1; j >= 0; --j) acc = acc * y + rows[j].eval(x);
  return acc;
}

Interval ipow(const Interval& t, int k) {
  if (k == 0) return Interval(Rational(1));
  mpq_class lo = t.lo, hi = t.hi;
  auto pw = [](const Rational& v, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= v;
    return r;
  };
  if (k % 2 == 1) return {pw(lo, k), pw(hi, k)};
  if (sgn(lo) >= 0) return {pw(lo, k), pw(hi, k)};
  if (sgn(hi) <= 0) return {pw(hi, k), pw(lo, k)};
  Rational nl = -lo;
  Rational m = std::max(nl, hi);
  return {Rational(0), pw(m, k)};
}

Interval BPoly::eval(const Interval& x, const Interval& y) const {
  int dx = degree_x(), dy = degree_y();
  std::vector<Interval> px, py;
  for (int i = 0; i <= dx; ++i) px.push_back(ipow(x, i));
  for (int j = 0; j <= dy; ++j) py.push_back(ipow(y, j));
  Interval acc(Rational(0));
  for (auto& [k, c] : terms_) acc = acc + c * (px[k.first] * py[k.second]);
  return acc;
}

double BPoly::eval(double x, double y) const { return DoublePoly(*this)(x, y); }

BPoly BPoly::dx() const {
  BPoly r;
  for (auto& [k, c] : terms_)
    if (k.first > 0) r.add_term(k.first - 1, k.second, c * k.first);
  return r;
}

BPoly BPoly::dy() const {
  BPoly r;
  for (auto& [k, c] : terms_)
    if (k.second > 0) r.add_term(k.first, k.second - 1, c * k.second);
  return r;
}

UPoly BPoly::at_x(const Rational& a) const {
  auto rows = coeffs_in_y();
  std::vector<Rational> v;
  for (auto& r : rows) v.push_back(r.eval(a));
  return UPoly(v);
}

UPoly BPoly::at_y(const Rational& b) const { return swap_xy().at_x(b); }

std::vector<UPoly> BPoly::coeffs_in_y() const {
  int dy = degree_y();
  std::vector<std::vector<Rational>> rows(std::max(dy + 1, 0));
  for (auto& [k, c] : terms_) {
    auto& row = rows[k.second];
    if (static_cast<int>(row.size()) <= k.first) row.resize(k.first + 1);
    row[k.first] = c;
  }
  std::vector<UPoly> out;
  for (auto& r : rows) out.emplace_back(r);
  return out;
}

BPoly BPoly::affine(const Rational& sx, const Rational& tx, const Rational& sy,
                    const Rational& ty) const {
  int dx = degree_x(), dy = degree_y();
  // binomial expansions of (s t + u)^k
  auto powers = [](const Rational& s, const Rational& u, int n) {
    std::vector<UPoly> p{UPoly::constant(Rational(1))};
    UPoly lin({u, s});
    for (int k = 1; k <= n; ++k) p.push_back(p.back() * lin);
    return p;
  };
  auto PX = powers(sx, tx, dx), PY = powers(sy, ty, dy);
  BPoly r;
  for (auto& [k, c] : terms_) {
    const UPoly& a = PX[k.first];
    const UPoly& b = PY[k.second];
    for (int i = 0; i <= a.degree(); ++i)
      for (int j = 0; j <= b.degree(); ++j) r.add_term(i, j, c * a.coeff(i) * b.coeff(j));
  }
  return r;
}

BPoly BPoly::swap_xy() const {
  BPoly r;
  for (auto& [k, c] : terms_) r.terms_.emplace(std::make_pair(k.second, k.first), c);
  return r;
}

BPoly BPoly::primitive() const {
  if (is_zero()) return *this;
  Integer l = 1, g = 0;
  for (auto& [k, c] : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  for (auto& [k, c] : terms_) {
    Integer n = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  return *this * Rational(l, g);
}

Rational BPoly::max_abs_coeff() const {
  Rational m = 0;
  for (auto& [k, c] : terms_) m = std::max(m, Rational(abs(c)));
  return m;
}

BPoly BPoly::operator+(const BPoly& o) const {
  BPoly r = *this;
  for (auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
  return r;
}

BPoly BPoly::operator-(const BPoly& o) const {
  BPoly r = *this;
  for (auto& [k, c] : o.terms_) r.add_term(k.first, k.second, -c);
  return r;
}

BPoly BPoly::operator*(const BPoly& o) const {
  BPoly r;
  for (auto& [k1, c1] : terms_)
    for (auto& [k2, c2] : o.terms_) r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
  return r;
}

BPoly BPoly::operator*(const Rational& s) const {
  BPoly r;
  if (sgn(s) == 0) return r;
  for (auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
  return r;
}

BPoly BPoly::operator-() const { return *this * Rational(-1); }

std::string BPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Rational a = abs(c);
    bool unit = a == 1 && (k.first + k.second) > 0;
    if (!unit) os << a.get_str();
    if (k.first > 0) os << (unit ? "" : "*") << "x" << (k.first > 1 ? "^" + std::to_string(k.first) : "");
    if (k.second > 0)
      os << ((unit && k.first == 0) ? "" : "*") << "y" << (k.second > 1 ? "^" + std::to_string(k.second) : "");
  }
  return os.str();
}

DoublePoly::DoublePoly(const BPoly& f) {
  int dy = f.degree_y(), dx = f.degree_x();
  cy.assign(std::max(dy + 1, 0), std::vector<double>(std::max(dx + 1, 0), 0.0));
  for (auto& [k, c] : f.terms()) cy[k.second][k.first] = c.get_d();
}

double DoublePoly::operator()(double x, double y) const {
  double acc = 0;
  for (int j = static_cast<int>(cy.size()) - 1; j >= 0; --j) {
    const auto& row = cy[j];
    double r = 0;
    for (int i = static_cast<int>(row.size()) - 1; i >= 0; --i) r = r * x + row[i];
    acc = acc * y + r;
  }
  return acc;
}

}  // namespace prkit

#include "prkit/resultant.hpp"

#include <algorithm>

#include "prkit/error.hpp"

namespace prkit {

Rational determinant(std::vector<std::vector<Rational>> m) {
  const size_t n = m.size();
  if (n == 0) return Rational(1);
  // Scale rows to integers; remember the scale.
  Rational scale = 1;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (auto& v : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
    scale *= l;
  }
  int sign = 1;
  Integer prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      size_t p = k + 1;
      while (p < n && sgn(a[p][k]) == 0) ++p;
      if (p == n) return Rational(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rational d(a[n - 1][n - 1] * sign);
  return d / scale;
}

std::vector<std::vector<Rational>> sylvester_matrix(const UPoly& f, int df, const UPoly& g, int dg) {
  const int n = df + dg;
  std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n, Rational(0)));
  for (int r = 0; r < dg; ++r)
    for (int k = 0; k <= df; ++k) s[r][r + df - k] = f.coeff(k);
  for (int r = 0; r < df; ++r)
    for (int k = 0; k <= dg; ++k) s[dg + r][r + dg - k] = g.coeff(k);
  return s;
}

Rational resultant(const UPoly& f, const UPoly& g) {
  if (f.is_zero() || g.is_zero()) return Rational(0);
  return determinant(sylvester_matrix(f, f.degree(), g, g.degree()));
}

UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (size_t k = 1; k < n; ++k)
    for (size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
  // Horner on the Newton form.
  UPoly p;
  for (size_t i = n; i-- > 0;) p = p * UPoly({-xs[i], Rational(1)}) + UPoly::constant(dd[i]);
  return p;
}

UPoly resultant_y(const BPoly& f, const BPoly& g) {
  if (f.is_zero() || g.is_zero()) return UPoly();
  const int df = f.degree_y(), dg = g.degree_y();
  if (df == 0 && dg == 0) return UPoly::constant(Rational(1));
  const int bezout = f.degree() * g.degree();
  const int mixed = dg * f.degree_x() + df * g.degree_x();
  const int bound = std::max(0, std::min(bezout, mixed));
  auto fy = f.coeffs_in_y(), gy = g.coeffs_in_y();
  std::vector<Rational> xs, vs;
  for (int k = 0; k <= bound; ++k) {
    Rational x = (k % 2 == 1) ? Rational((k + 1) / 2) : Rational(-(k / 2));
    std::vector<Rational> a, b;
    for (auto& c : fy) a.push_back(c.eval(x));
    for (auto& c : gy) b.push_back(c.eval(x));
    xs.push_back(x);
    vs.push_back(determinant(sylvester_matrix(UPoly(a), df, UPoly(b), dg)));
  }
  return interpolate(xs, vs);
}

UPoly resultant_x(const BPoly& f, const BPoly& g) { return resultant_y(f.swap_xy(), g.swap_xy()); }

}  // namespace prkit

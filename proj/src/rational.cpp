#include "prkit/rational.hpp"

#include <cmath>

#include "prkit/error.hpp"

namespace prkit {

Rational parse_rational(const std::string& text) {
  std::string s = text;
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw Error("parse", "empty rational literal");
  try {
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw Error("parse", "bad rational '" + text + "'");
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac = s.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+") throw Error("parse", "bad rational '" + text + "'");
      if (digits[0] == '+') digits.erase(digits.begin());
      Integer num(digits, 10);
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    if (s[0] == '+') s.erase(s.begin());
    Rational q(s, 10);
    if (q.get_den() == 0) throw Error("parse", "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error("parse", "bad rational '" + text + "'");
  }
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational dyadic_round(double v, int bits) {
  double scaled = std::nearbyint(std::ldexp(v, bits));
  Rational q{Integer(scaled)};
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), bits);
  return q;
}

Rational dyadic_round(const Rational& v, int bits) {
  Rational s = v;
  mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), bits);
  // floor(s + 1/2)
  s += Rational(1, 2);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  Rational q(fl);
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), bits);
  return q;
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  if (a.lo == a.hi) return a.lo * b;
  if (b.lo == b.hi) return b.lo * a;
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Rational lo = p[0], hi = p[0];
  for (int i = 1; i < 4; ++i) {
    if (p[i] < lo) lo = p[i];
    if (p[i] > hi) hi = p[i];
  }
  return {lo, hi};
}

Interval operator*(const Rational& a, const Interval& b) {
  if (sgn(a) >= 0) return {a * b.lo, a * b.hi};
  return {a * b.hi, a * b.lo};
}

}  // namespace prkit

#include <gtest/gtest.h>

#include "prkit/error.hpp"
#include "prkit/rational.hpp"
#include "prkit/upoly.hpp"

using namespace prkit;

TEST(Rational, ParseForms) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Rational, FormatIsCanonical) {
  Rational q(6, -8);
  q.canonicalize();
  EXPECT_EQ(format_rational(q), "-3/4");
  EXPECT_EQ(format_rational(Rational(5)), "5/1");
  EXPECT_EQ(parse_rational(format_rational(Rational(-22, 7))), Rational(-22, 7));
}

TEST(Rational, DyadicRound) {
  EXPECT_EQ(dyadic_round(0.3, 4), Rational(5, 16));
  EXPECT_EQ(dyadic_round(Rational(1, 3), 3), Rational(3, 8));
}

TEST(Interval, ArithmeticEnclosure) {
  Interval a(Rational(-1), Rational(2)), b(Rational(3), Rational(4));
  Interval p = a * b;
  EXPECT_EQ(p.lo, Rational(-4));
  EXPECT_EQ(p.hi, Rational(8));
  EXPECT_EQ((a - b).lo, Rational(-5));
  EXPECT_EQ(Interval(Rational(1), Rational(2)).sign(), 1);
  EXPECT_EQ(a.sign(), 0);
}

TEST(UPoly, EvalDerivativeProduct) {
  UPoly p({Rational(-2), Rational(0), Rational(1)});  // t^2 - 2
  EXPECT_EQ(p.eval(Rational(3, 2)), Rational(1, 4));
  EXPECT_EQ(p.derivative(), UPoly({Rational(0), Rational(2)}));
  UPoly q = p * p;
  EXPECT_EQ(q.degree(), 4);
  EXPECT_EQ(q.eval(Rational(1)), Rational(1));
  EXPECT_TRUE((p - p).is_zero());
  Interval v = p.eval(Interval(Rational(1), Rational(2)));
  EXPECT_LE(v.lo, Rational(-1));
  EXPECT_GE(v.hi, Rational(2));
}

TEST(ZPoly, GcdAndSquarefree) {
  // (x-1)^2 (x+2) and (x-1)(x+3)
  ZPoly a({Integer(2), Integer(-3), Integer(0), Integer(1)});
  ZPoly b({Integer(-3), Integer(2), Integer(1)});
  ZPoly g = zp::gcd(a, b);
  EXPECT_EQ(g, ZPoly({Integer(-1), Integer(1)}));
  ZPoly s = zp::squarefree(a);
  EXPECT_EQ(s, ZPoly({Integer(-2), Integer(1), Integer(1)}));
  EXPECT_EQ(zp::gcd(ZPoly({Integer(1), Integer(1)}), ZPoly({Integer(-1), Integer(1)})),
            ZPoly({Integer(1)}));
}

TEST(ZPoly, TaylorShiftMatchesEvaluation) {
  ZPoly p({Integer(5), Integer(-3), Integer(0), Integer(2)});
  ZPoly q = zp::taylor_shift1(p);
  UPoly pr = zp::to_rational(p), qr = zp::to_rational(q);
  for (int t = -3; t <= 3; ++t) EXPECT_EQ(qr.eval(Rational(t)), pr.eval(Rational(t + 1)));
}

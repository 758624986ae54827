#include <gtest/gtest.h>

#include "prkit/bpoly.hpp"
#include "prkit/error.hpp"
#include "prkit/resultant.hpp"
#include "prkit/system.hpp"

using namespace prkit;

namespace {
const BPoly X = BPoly::x(), Y = BPoly::y();
BPoly C(long v) { return BPoly::constant(Rational(v)); }
UPoly U(std::initializer_list<long> cs) {
  std::vector<Rational> v;
  for (long c : cs) v.emplace_back(c);
  return UPoly(v);
}
Box big() { return {Rational(-10), Rational(10), Rational(-10), Rational(10)}; }
}  // namespace

TEST(BPoly, EvalDiskAtHalfHalf) {
  BPoly f = C(1) - X * X - Y * Y;
  EXPECT_EQ(f.eval(Rational(1, 2), Rational(1, 2)), Rational(1, 2));
  EXPECT_EQ(f.degree(), 2);
  EXPECT_EQ(f.dx(), C(-2) * X);
  EXPECT_DOUBLE_EQ(f.eval(0.5, 0.5), 0.5);
  EXPECT_EQ(f.at_x(Rational(1, 2)), UPoly({Rational(3, 4), Rational(0), Rational(-1)}));
}

TEST(BPoly, IntervalEvalEncloses) {
  BPoly f = X * X * Y - C(3) * Y * Y * Y + X;
  Interval ix(Rational(-1, 2), Rational(1, 3)), iy(Rational(1, 4), Rational(2, 3));
  Interval v = f.eval(ix, iy);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      Rational px = ix.lo + (ix.hi - ix.lo) * Rational(a, 6);
      Rational py = iy.lo + (iy.hi - iy.lo) * Rational(b, 6);
      Rational val = f.eval(px, py);
      EXPECT_LE(v.lo, val);
      EXPECT_GE(v.hi, val);
    }
  Interval sq = ipow(Interval(Rational(-2), Rational(1)), 2);
  EXPECT_EQ(sq.lo, 0);
  EXPECT_EQ(sq.hi, 4);
}

TEST(BPoly, AffineAndSwap) {
  BPoly f = X * X + C(2) * X * Y - Y;
  BPoly g = f.affine(Rational(2), Rational(1), Rational(-1), Rational(3));
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      EXPECT_EQ(g.eval(Rational(a), Rational(b)), f.eval(Rational(2 * a + 1), Rational(-b + 3)));
  EXPECT_EQ(f.swap_xy().eval(Rational(2), Rational(5)), f.eval(Rational(5), Rational(2)));
  EXPECT_EQ((f * Rational(6, 4)).primitive(), f);
}

TEST(Resultant, HandComputedDeterminants) {
  EXPECT_EQ(determinant({{Rational(2), Rational(1)}, {Rational(7), Rational(4)}}), Rational(1));
  EXPECT_EQ(determinant({{Rational(0), Rational(1, 2), Rational(0)},
                         {Rational(1), Rational(0), Rational(0)},
                         {Rational(0), Rational(0), Rational(3)}}),
            Rational(-3, 2));
  // Res(t^2 - 1, t - 2) = (2)^2 - 1 = 3
  EXPECT_EQ(resultant(U({-1, 0, 1}), U({-2, 1})), Rational(3));
}

TEST(Resultant, ParabolaAndLine) {
  UPoly r = resultant_y(Y * Y - X, Y);
  EXPECT_TRUE(r == U({0, -1}) || r == U({0, 1}));
}

TEST(Resultant, ReferenceValues) {
  // Coefficient lists (ascending) from an independent computer-algebra system.
  struct Case {
    BPoly f, g;
    UPoly rx, ry;
  };
  std::vector<Case> cases = {
      {C(1) - X * X - Y * Y, Y - X, U({1, 0, -2}), U({1, 0, -2})},
      {X * X + Y * Y - C(1), (X - C(1)) * (X - C(1)) + Y * Y - C(1), U({1, -4, 4}), U({-3, 0, 4})},
      {X * X * X - Y * Y + X * Y - C(2), X * Y * Y + C(3) * Y - X + C(1),
       U({19, -3, 12, -8, 1, -9, 0, 0, 1}), U({-1, 10, 35, 25, -9, 1, 2, 0, 1})},
      {C(2) * X * X * Y + Y * Y * Y - X, X * X - Y * Y + C(3) * X * Y - C(1),
       U({-1, 0, -3, 0, 9, 0, 27}), U({-1, 0, -3, 0, 9, 0, 27})},
  };
  for (auto& c : cases) {
    EXPECT_EQ(resultant_y(c.f, c.g), c.rx) << c.f.to_string();
    EXPECT_EQ(resultant_x(c.f, c.g), c.ry) << c.f.to_string();
  }
}

TEST(System, LensIntersectionIsTransverse) {
  BPoly f = C(1) - X * X - Y * Y;
  BPoly g = C(1) - (X - C(1)) * (X - C(1)) - Y * Y;
  auto sol = solve_system(f, g, big());
  ASSERT_EQ(sol.size(), 2u);
  for (auto& s : sol) {
    EXPECT_TRUE(s.transverse);
    EXPECT_TRUE(s.certified);
    EXPECT_EQ(s.x.compare(Rational(1, 2)), 0);
    s.y.refine_bits(50);
  }
  EXPECT_NEAR(sol[0].y.approx(), -0.8660254037844386, 1e-12);
  EXPECT_NEAR(sol[1].y.approx(), 0.8660254037844386, 1e-12);
}

TEST(System, TangentCirclesAreNotTransverse) {
  BPoly f = C(1) - X * X - Y * Y;
  BPoly g = C(1) - (X - C(2)) * (X - C(2)) - Y * Y;
  auto sol = solve_system(f, g, big());
  ASSERT_EQ(sol.size(), 1u);
  EXPECT_FALSE(sol[0].transverse);
  EXPECT_EQ(sol[0].x.compare(Rational(1)), 0);
  EXPECT_EQ(sol[0].y.compare(Rational(0)), 0);
}

TEST(System, ReferenceCubicSystem) {
  BPoly f = X * X * X - Y * Y + X * Y - C(2), g = X * Y * Y + C(3) * Y - X + C(1);
  auto sol = solve_system(f, g, big());
  ASSERT_EQ(sol.size(), 2u);
  const double ref[2][2] = {{1.2406489181549273319, 0.077718404060931613797},
                            {2.0546880936624561114, -1.7529079562273795871}};
  for (int k = 0; k < 2; ++k) {
    sol[k].x.refine_bits(60);
    sol[k].y.refine_bits(60);
    EXPECT_NEAR(sol[k].x.approx(), ref[k][0], 1e-15);
    EXPECT_NEAR(sol[k].y.approx(), ref[k][1], 1e-15);
    EXPECT_TRUE(sol[k].transverse);
  }
}

TEST(System, BoxRestrictsAndSharedComponentThrows) {
  BPoly f = C(1) - X * X - Y * Y;
  BPoly g = C(1) - (X - C(1)) * (X - C(1)) - Y * Y;
  Box upper{Rational(-10), Rational(10), Rational(0), Rational(10)};
  EXPECT_EQ(solve_system(f, g, upper).size(), 1u);
  EXPECT_THROW(solve_system(f * (X - Y), (X - Y) * (X + C(3)), big()), Error);
  EXPECT_TRUE(solve_system(f, X - C(5), big()).empty());
}

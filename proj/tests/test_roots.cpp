#include <gtest/gtest.h>

#include <random>

#include "prkit/error.hpp"
#include "prkit/roots.hpp"

using namespace prkit;

namespace {
UPoly from_ints(std::initializer_list<long> cs) {
  std::vector<Rational> v;
  for (long c : cs) v.emplace_back(c);
  return UPoly(v);
}
}  // namespace

TEST(Roots, ClosedFormSqrt3Over2) {
  // 3/4 - y^2 has roots +-sqrt(3)/2
  UPoly p({Rational(3, 4), Rational(0), Rational(-1)});
  auto r = isolate_real_roots(p);
  ASSERT_EQ(r.size(), 2u);
  r[1].value.refine_bits(50);
  EXPECT_NEAR(r[1].value.approx(), 0.8660254037844386, 1e-14);
  r[0].value.refine_bits(20);
  EXPECT_NEAR(r[0].value.approx(), -0.8660254037844386, 1e-5);
  EXPECT_EQ(r[0].multiplicity, 1);
  // Sturm oracle agrees on each isolating interval
  auto seq = sturm_sequence(zp::from_rational(p));
  for (auto& root : r) EXPECT_EQ(sturm_count(seq, root.value.lo(), root.value.hi()), 1);
}

TEST(Roots, DoubleRootAndNoRealRoots) {
  auto r = isolate_real_roots(from_ints({0, 0, 1}));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].value.is_exact());
  EXPECT_EQ(r[0].value.lo(), 0);
  EXPECT_EQ(r[0].multiplicity, 2);
  EXPECT_TRUE(isolate_real_roots(from_ints({1, 0, 1})).empty());
  EXPECT_THROW(isolate_real_roots(UPoly()), Error);
  EXPECT_TRUE(isolate_real_roots(from_ints({5})).empty());
}

TEST(Roots, MultiplicityChain) {
  // (x-1)^3 (x+2)^2 x
  UPoly a = from_ints({-1, 1}), b = from_ints({2, 1}), c = from_ints({0, 1});
  auto r = isolate_real_roots(a * a * a * b * b * c);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].multiplicity, 2);
  EXPECT_EQ(r[1].multiplicity, 1);
  EXPECT_EQ(r[2].multiplicity, 3);
}

TEST(Roots, FrozenReferenceValues) {
  // Values from an independent computer-algebra computation.
  struct Case {
    UPoly p;
    std::vector<double> roots;
  };
  std::vector<Case> cases = {
      {from_ints({-2, 0, 0, 1}), {1.2599210498948731648}},
      {from_ints({-2, 0, 1}) * from_ints({-3, 0, 1}) * from_ints({-1, 3}),
       {-1.7320508075688772935, -1.4142135623730950488, 0.33333333333333333333,
        1.4142135623730950488, 1.7320508075688772935}},
      {UPoly({Rational(1, 10), Rational(4), Rational(0), Rational(-5), Rational(0), Rational(1)}),
       {-2.0041310111272358161, -0.98309111384191149986, -0.025019574713186342233,
        1.0164450671278457484, 1.9957966325544879098}},
      {from_ints({0, 9, 0, -120, 0, 432, 0, -576, 0, 256}),
       {-0.98480775301220805937, -0.86602540378443864676, -0.64278760968653932632,
        -0.34202014332566873304, 0, 0.34202014332566873304, 0.64278760968653932632,
        0.86602540378443864676, 0.98480775301220805937}},
  };
  for (auto& cs : cases) {
    auto r = isolate_real_roots(cs.p);
    ASSERT_EQ(r.size(), cs.roots.size());
    for (size_t i = 0; i < r.size(); ++i) {
      r[i].value.refine_bits(60);
      EXPECT_NEAR(r[i].value.approx(), cs.roots[i], 1e-15);
    }
  }
}

TEST(Roots, WindowIsClosed) {
  UPoly p = from_ints({0, -1, 0, 1});  // x^3 - x
  auto r = isolate_real_roots(p, Interval(Rational(0), Rational(1)));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].value.lo(), 0);
  EXPECT_EQ(r[1].value.lo(), 1);
  auto s = isolate_real_roots(p, Interval(Rational(1, 10), Rational(9, 10)));
  EXPECT_TRUE(s.empty());
}

TEST(Roots, RandomAgainstSturm) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(-20, 20), deg(1, 9);
  for (int trial = 0; trial < 200; ++trial) {
    int d = deg(rng);
    std::vector<Rational> c(d + 1);
    for (auto& v : c) v = coef(rng);
    if (c[d] == 0) c[d] = 1;
    UPoly p(c);
    auto r = isolate_real_roots(p);
    ZPoly sf = zp::squarefree(zp::from_rational(p));
    auto seq = sturm_sequence(sf);
    Rational b = root_bound(sf);
    EXPECT_EQ(static_cast<int>(r.size()), sturm_count(seq, -b, b)) << p.to_string();
    for (size_t i = 0; i + 1 < r.size(); ++i) EXPECT_LT(compare(r[i].value, r[i + 1].value), 0);
    for (auto& x : r) {
      if (x.value.is_exact()) {
        EXPECT_EQ(p.eval(x.value.lo()), 0);
      } else {
        // isolating intervals are open; (lo, hi] may also catch a rational root at hi
        int at_hi = zp::sign_at(sf, x.value.hi()) == 0 ? 1 : 0;
        EXPECT_EQ(sturm_count(seq, x.value.lo(), x.value.hi()) - at_hi, 1)
            << p.to_string() << " [" << x.value.lo() << ", " << x.value.hi() << "]";
      }
    }
  }
}

TEST(AlgebraicReal, CompareEqualNumbersFromDifferentPolys) {
  // sqrt(2) as root of x^2-2 and of x^4-4 (= (x^2-2)(x^2+2))
  auto r1 = isolate_real_roots(from_ints({-2, 0, 1}));
  auto r2 = isolate_real_roots(from_ints({-4, 0, 0, 0, 1}));
  ASSERT_EQ(r1.size(), 2u);
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_EQ(compare(r1[1].value, r2[1].value), 0);
  EXPECT_EQ(compare(r1[0].value, r2[1].value), -1);
  auto r3 = isolate_real_roots(from_ints({-3, 0, 1}));
  EXPECT_EQ(compare(r3[1].value, r1[1].value), 1);
  AlgebraicReal q(Rational(7, 5));
  EXPECT_EQ(compare(q, r1[1].value), -1);
  EXPECT_EQ(r1[1].value.compare(Rational(3, 2)), -1);
}

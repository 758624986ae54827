#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "prkit/conic.hpp"
#include "prkit/error.hpp"
#include "prkit/resultant.hpp"
#include "prkit/system.hpp"

using namespace prkit;

namespace {
const BPoly X = BPoly::x(), Y = BPoly::y();
BPoly C(const Rational& v) { return BPoly::constant(v); }

BPoly random_poly(std::mt19937& rng, int deg) {
  std::uniform_int_distribution<int> c(-9, 9), d(1, 5);
  BPoly::Terms t;
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j) t[{i, j}] = Rational(c(rng), d(rng));
  for (auto& [k, v] : t) v.canonicalize();
  return BPoly(t);
}
}  // namespace

TEST(Conic, Constructors) {
  EXPECT_EQ(conic({Rational(0), Rational(0)}), C(1) - X * X - Y * Y);
  ConicSpec ext{Rational(0), Rational(0), Rational(1), Rational(1), Rational(1, 4),
                ConicSign::ExteriorPositive};
  EXPECT_EQ(conic(ext), X * X + Y * Y - C(Rational(1, 4)));
  ConicSpec e{Rational(1), Rational(0), Rational(1), Rational(4), Rational(1)};
  BPoly f = conic(e);
  EXPECT_EQ(f, C(1) - (X - C(1)) * (X - C(1)) - C(4) * Y * Y);
  EXPECT_EQ(f.eval(e.cx, e.cy), e.r);
  ConicSpec bad{Rational(0), Rational(0), Rational(0)};
  EXPECT_THROW(conic(bad), Error);
}

TEST(Fit, RecoversPolynomialInSpan) {
  std::vector<FitSample> s;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) {
      Rational x(i, 2), y(j, 2);
      s.push_back({x, y, Rational(1 - x * x - y * y).get_d(), 1.0});
    }
  FitResult r = fit_polynomial(s, {.degree = 2});
  EXPECT_EQ(r.poly, C(1) - X * X - Y * Y);
  EXPECT_EQ(r.residual, 0.0);
}

TEST(Fit, UnderfitReportsResidual) {
  std::vector<FitSample> s;
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      double x = i / 3.0, y = j / 3.0;
      s.push_back({Rational(i, 3), Rational(j, 3), x * x + y * y < 1 ? 1.0 : 0.0, 1.0});
    }
  FitResult r = fit_polynomial(s, {.degree = 1});
  EXPECT_GT(r.residual, 0.1);
}

TEST(Fit, RankDeficiencyNeedsRegularization) {
  // All samples on the line y = x: monomials x and y are indistinguishable.
  std::vector<FitSample> s;
  for (int i = 0; i < 10; ++i) s.push_back({Rational(i), Rational(i), double(i), 1.0});
  EXPECT_THROW(fit_polynomial(s, {.degree = 1}), Error);
  FitResult r = fit_polynomial(s, {.degree = 1, .regularization = 1e-6});
  EXPECT_LT(r.residual, 1e-3);
  std::vector<FitSample> few(2);
  EXPECT_THROW(fit_polynomial(few, {.degree = 2}), Error);
}

TEST(PolyProperties, RestrictionIsMultiplicative) {
  std::mt19937 rng(7);
  for (int k = 0; k < 20; ++k) {
    BPoly p = random_poly(rng, 3), q = random_poly(rng, 2);
    Rational t(static_cast<int>(rng() % 41) - 20, static_cast<int>(rng() % 7) + 1);
    t.canonicalize();
    EXPECT_EQ((p * q).at_x(t), p.at_x(t) * q.at_x(t));
  }
}

TEST(PolyProperties, DerivativesCommuteAndAreLinear) {
  std::mt19937 rng(11);
  for (int k = 0; k < 20; ++k) {
    BPoly p = random_poly(rng, 4), q = random_poly(rng, 3);
    EXPECT_EQ(p.dx().dy(), p.dy().dx());
    EXPECT_EQ((p + q).dx(), p.dx() + q.dx());
    EXPECT_EQ((p + q).dy(), p.dy() + q.dy());
  }
  EXPECT_EQ((X * Y).dx(), Y);
  EXPECT_TRUE(C(5).dx().is_zero());
}

TEST(PolyProperties, ResultantVanishesAtSolutions) {
  std::mt19937 rng(3);
  int seen = 0;
  for (int k = 0; k < 12; ++k) {
    BPoly f = random_poly(rng, 2), g = random_poly(rng, 2);
    Box box{Rational(-20), Rational(20), Rational(-20), Rational(20)};
    auto sol = solve_system(f, g, box);
    UPoly r = resultant_y(f, g);
    for (auto& s : sol) {
      s.x.refine(Rational(1, 1000000) * Rational(1, 1000000));
      EXPECT_TRUE(r.eval(s.x.interval()).contains_zero());
      ++seen;
    }
  }
  EXPECT_GT(seen, 0);
}

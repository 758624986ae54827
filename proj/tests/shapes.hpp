#pragma once

#include <prkit/conic.hpp>
#include <prkit/domain.hpp>

namespace shapes {

using prkit::BPoly;
using prkit::ConicSign;
using prkit::DomainSpec;
using prkit::Rational;

inline BPoly circle(Rational cx, Rational cy, Rational r2, bool interior = true) {
  return prkit::conic({cx, cy, 1, 1, r2, interior ? ConicSign::InteriorPositive : ConicSign::ExteriorPositive});
}

inline prkit::Box box(int s = 2) { return {Rational(-s), Rational(s), Rational(-s), Rational(s)}; }

inline DomainSpec disk() { return {{{"c", circle(0, 0, 1)}}, 0, 0, box()}; }

inline DomainSpec annulus() {
  return {{{"outer", circle(0, 0, 1)}, {"inner", circle(0, 0, Rational(1, 4), false)}}, 0, Rational(3, 4), box()};
}

inline DomainSpec lens() {
  return {{{"a", circle(0, 0, 1)}, {"b", circle(1, 0, 1)}}, Rational(1, 2), 0, box()};
}

// Three unit circles through the origin; the component touches all three there.
inline DomainSpec triple_point() {
  return {{{"p", circle(1, 0, 1)}, {"q", circle(0, 1, 1, false)}, {"r", circle(-1, 0, 1, false)}},
          1,
          Rational(-1, 2),
          box(3)};
}

inline DomainSpec with_far_circle() {
  DomainSpec d = disk();
  d.curves.push_back({"far", circle(0, 0, 100)});
  d.box = box(12);
  return d;
}

inline DomainSpec nodal() {
  BPoly x = BPoly::x(), y = BPoly::y();
  return {{{"n", y * y - x * x * (x + BPoly::constant(1))}}, Rational(-1, 2), 0, box()};
}

}  // namespace shapes

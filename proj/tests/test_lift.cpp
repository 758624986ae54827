#include <gtest/gtest.h>

#include <prkit/error.hpp>
#include <prkit/lift.hpp>

#include "shapes.hpp"

using namespace prkit;

TEST(Lift, DiskSphere) {
  LiftSpec l{{{"c", "a"}}, {{"a", 1}}};
  LiftDocument doc = emit_lift(shapes::disk(), l);
  ASSERT_EQ(doc.equations.size(), 1u);
  EXPECT_EQ(equation_text(doc.equations[0]), "1 - x1^2 - x2^2 - y_{a,1}^2 - y_{a,2}^2 = 0");
  EXPECT_EQ(doc.ambient_dimension, 4);
  json j = lift_to_json(doc);
  EXPECT_EQ(j["variables"], json({"x1", "x2", "y_{a,1}", "y_{a,2}"}));
  EXPECT_EQ(j["equations"][0]["terms"].size(), 5u);
}

TEST(Lift, AnnulusSingleLabel) {
  LiftSpec l{{{"outer", "a"}, {"inner", "a"}}, {{"a", 0}}};
  EXPECT_TRUE(validate_partition(shapes::annulus(), l).empty());
  LiftDocument doc = emit_lift(shapes::annulus(), l);
  EXPECT_EQ(doc.ambient_dimension, 3);
  const DomainSpec d = shapes::annulus();
  EXPECT_EQ(doc.equations[0].base, d.curves[0].f * d.curves[1].f);
}

TEST(Lift, LensNeedsTwoLabels) {
  LiftSpec one{{{"a", "a"}, {"b", "a"}}, {{"a", 0}}};
  auto vs = validate_partition(shapes::lens(), one);
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_EQ(vs[0].tag, "shared-label-at-crossing");
  bool upper = false;
  for (auto& v : vs) upper = upper || (v.points[0].y.lo > 0 && v.points[0].y.lo.get_d() < 0.8660254037844387 &&
                                        v.points[0].y.hi.get_d() > 0.8660254037844386);
  EXPECT_TRUE(upper);
  EXPECT_THROW(emit_lift(shapes::lens(), one), Error);
  LiftDocument doc = emit_lift(shapes::lens(), default_lift(shapes::lens()));
  EXPECT_EQ(doc.equations.size(), 2u);
  EXPECT_EQ(doc.ambient_dimension, 4);
}

TEST(Lift, SurjectivityAndCoverage) {
  LiftSpec l{{{"c", "a"}}, {{"a", 0}, {"b", 0}}};
  auto vs = validate_partition(shapes::disk(), l);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].tag, "not-surjective");
  LiftSpec m{{}, {{"a", 0}}};
  EXPECT_EQ(validate_partition(shapes::disk(), m)[0].tag, "unassigned-curve");
}

TEST(Lift, DeterministicAndRecoversProduct) {
  for (auto d : {shapes::disk(), shapes::annulus(), shapes::lens()}) {
    LiftDocument a = emit_lift(d, default_lift(d)), b = emit_lift(d, default_lift(d));
    EXPECT_EQ(lift_to_json(a).dump(), lift_to_json(b).dump());
    BPoly prod = BPoly::constant(1), want = BPoly::constant(1);
    for (auto& eq : a.equations) prod = prod * eq.base;
    for (auto& c : d.curves) want = want * c.f;
    EXPECT_EQ(prod, want);
  }
}

TEST(Lift, JsonReader) {
  json j = {{"assignment", {{"c", "a"}}}, {"multiplicity", {{"a", 2}}}};
  LiftSpec l = lift_from_json(j);
  EXPECT_EQ(l.multiplicity.at("a"), 2);
  j["multiplicity"]["a"] = "x";
  EXPECT_THROW(lift_from_json(j), Error);
}

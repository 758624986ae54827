#include <gtest/gtest.h>

#include <algorithm>
#include <prkit/error.hpp>
#include <prkit/io.hpp>
#include <prkit/realize.hpp>

using namespace prkit;

namespace {

EmbeddedGraph fixture(const std::string& name) {
  return embedded_from_json(read_json_file(std::string(PRKIT_FIXTURES) + "/graphs/" + name + ".json"));
}

EmbeddedGraph make_graph(std::vector<EVertex> vs, std::vector<std::pair<int, int>> es) {
  EmbeddedGraph g;
  g.vertices = std::move(vs);
  for (size_t i = 0; i < es.size(); ++i) g.edges.push_back({"e" + std::to_string(i), es[i].first, es[i].second, {}});
  return g;
}

// Four arms meeting at the origin, two on each side.
EmbeddedGraph cross_graph() {
  return make_graph({{"X", 0, 0}, {"a", -1, 1}, {"b", -1, -1}, {"c", 1, 1}, {"d", 1, -1}},
                    {{1, 0}, {2, 0}, {0, 3}, {0, 4}});
}

Rational q(long n, long d = 1) { return Rational(n, d); }

int count_kind(const std::vector<FoldRecord>& inv, FoldKind k) {
  return static_cast<int>(std::count_if(inv.begin(), inv.end(), [&](const FoldRecord& r) { return r.kind == k; }));
}

int count_role(const std::vector<Excision>& ex, const std::string& role) {
  return static_cast<int>(std::count_if(ex.begin(), ex.end(), [&](const Excision& e) { return e.role == role; }));
}

int degree_one(const EmbeddedGraph& g) {
  int n = 0;
  for (size_t v = 0; v < g.vertices.size(); ++v) n += g.degree(static_cast<int>(v)) == 1;
  return n;
}

}  // namespace

TEST(RealizeParameters, DefaultsOnY) {
  auto prm = choose_parameters(fixture("y"), {});
  EXPECT_EQ(prm.eps1, q(1, 4));
  EXPECT_EQ(prm.eps2, q(1, 2));
  EXPECT_EQ(prm.eps_prime, q(1, 4));
}

TEST(RealizeParameters, EdgeWithoutBranchVertexFallsBackToEps1) {
  auto prm = choose_parameters(fixture("edge"), {});
  EXPECT_EQ(prm.eps1, q(1, 4));
  EXPECT_EQ(prm.eps2, q(1, 4));
}

TEST(RealizeParameters, RejectsHypothesisViolations) {
  for (auto name : {"path3", "extremum3"}) {
    try {
      choose_parameters(fixture(name), {});
      FAIL() << name;
    } catch (const Error& e) {
      EXPECT_EQ(e.tag(), "invalid-graph") << name;
    }
  }
}

TEST(RealizeParameters, InfeasibleChoicesAreReported) {
  RealizationConfig wide;
  wide.eps1 = q(1, 2);
  RealizationConfig flat;
  flat.eps2 = q(1, 4);
  RealizationConfig tall;
  tall.eps2 = q(1, 2);
  tall.eps_prime = q(1, 2);
  for (auto* cfg : {&wide, &flat, &tall}) {
    try {
      choose_parameters(fixture("y"), *cfg);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.tag(), "realize-parameters");
    }
  }
}

TEST(RealizeParameters, NeighbourhoodMustAvoidOtherFeatures) {
  // The edge w-r passes above the branch vertex b at height 3/4.
  auto g = make_graph({{"w", -1, 1}, {"l", -1, 0}, {"b", 0, 0}, {"r", 1, q(1, 2)}, {"s", 1, q(-1, 2)}, {"z", 2, q(1, 2)}},
                      {{1, 2}, {2, 3}, {2, 4}, {0, 3}, {3, 5}});
  ASSERT_TRUE(validate_theorem_hypotheses(g).empty());
  EXPECT_NO_THROW(choose_parameters(g, {}));
  RealizationConfig cfg;
  cfg.eps2 = 1;
  try {
    choose_parameters(g, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.tag(), "realize-parameters");
    EXPECT_NE(std::string(e.what()).find("meets edge"), std::string::npos);
  }
}

TEST(RealizeGeometry, VerticalSegmentsCoverEveryAbscissa) {
  auto g = fixture("y");
  auto prm = choose_parameters(g, {});
  auto vs = vertical_segments(g, prm);
  ASSERT_EQ(vs.size(), 3u);
  EXPECT_EQ(vs[0].a, (Point{-1, q(-3, 2)}));
  EXPECT_EQ(vs[0].b, (Point{-1, q(3, 2)}));
  EXPECT_EQ(vs[1].a, (Point{0, q(-1, 2)}));
  EXPECT_EQ(vs[1].b, (Point{0, q(1, 2)}));
  EXPECT_EQ(vs[2].a, (Point{1, q(-1, 2)}));
}

TEST(RealizeGeometry, LandingsOnY) {
  auto g = fixture("y");
  auto prm = choose_parameters(g, {});
  auto nb = rewire(g, prm);
  ASSERT_EQ(nb.size(), 1u);
  EXPECT_EQ(nb[0].vertex, "C");
  ASSERT_EQ(nb[0].left.size(), 2u);
  ASSERT_EQ(nb[0].right.size(), 1u);
  // Sorted by clip height: the arm from B is below the arm from A.
  EXPECT_EQ(nb[0].left[0].edge, "e1");
  EXPECT_EQ(nb[0].left[0].clip, (Point{q(-1, 4), q(-1, 4)}));
  EXPECT_EQ(nb[0].left[0].height, q(-1, 4));
  EXPECT_EQ(nb[0].left[1].height, q(1, 4));
  EXPECT_EQ(nb[0].right[0].height, 0);
  EXPECT_EQ(nb[0].stem_lo, q(-1, 4));
  EXPECT_EQ(nb[0].stem_hi, q(1, 4));
}

TEST(RealizeGeometry, LedgerOnY) {
  auto g = fixture("y");
  auto prm = choose_parameters(g, {});
  auto cx = build_complex(g, prm, rewire(g, prm));
  std::map<std::string, int> n;
  for (auto& s : cx) n[s.role]++;
  EXPECT_EQ(n["edge"], 3);
  EXPECT_EQ(n["slant"] + n["landing"], 6);
  EXPECT_EQ(n["stem"], 1);
}

TEST(RealizeGeometry, DegreeFourNesting) {
  auto g = cross_graph();
  ASSERT_TRUE(validate_theorem_hypotheses(g).empty());
  auto prm = choose_parameters(g, {});
  auto nb = rewire(g, prm);
  ASSERT_EQ(nb.size(), 1u);
  const auto &L = nb[0].left, &R = nb[0].right;
  ASSERT_EQ(L.size(), 2u);
  ASSERT_EQ(R.size(), 2u);
  // Right landings strictly inside the left span, all heights distinct.
  EXPECT_LT(L[0].height, R[0].height);
  EXPECT_LT(R[1].height, L[1].height);
  EXPECT_LT(R[0].height, R[1].height);
  for (auto& l : L)
    for (auto& r : R) EXPECT_NE(l.height, r.height);
  EXPECT_NE(L[0].height + L[1].height, R[0].height + R[1].height);
  auto cx = build_complex(g, prm, nb);
  int landings = 0;
  for (auto& s : cx) landings += s.role == "landing";
  EXPECT_EQ(landings, 4);
  prm.delta = q(1, 10);
  auto inv = fold_inventory(g, prm, nb);
  EXPECT_EQ(count_kind(inv, FoldKind::Definite), 4);
  EXPECT_EQ(count_kind(inv, FoldKind::Indefinite), 2);
}

TEST(RealizeGeometry, FoldInventoryCounts) {
  struct Case {
    const char* name;
    int definite, indefinite;
  };
  for (auto c : {Case{"edge", 2, 0}, Case{"y", 3, 1}, Case{"inverted_y", 3, 1}, Case{"double_y", 4, 2},
                 Case{"eyeglasses", 2, 2}}) {
    auto g = fixture(c.name);
    auto prm = choose_parameters(g, {});
    prm.delta = prm.eps1 / 2;
    auto inv = fold_inventory(g, prm, rewire(g, prm));
    EXPECT_EQ(count_kind(inv, FoldKind::Definite), c.definite) << c.name;
    EXPECT_EQ(count_kind(inv, FoldKind::Indefinite), c.indefinite) << c.name;
  }
}

TEST(RealizeGeometry, DefiniteFoldsSitBeyondTheirVertex) {
  auto g = fixture("y");
  auto prm = choose_parameters(g, {});
  prm.delta = q(1, 5);
  for (auto& r : fold_inventory(g, prm, rewire(g, prm))) {
    if (r.kind != FoldKind::Definite) continue;
    const auto& v = g.vertices[g.find(r.vertex)];
    Rational off = r.at.first - v.x;
    EXPECT_EQ(off, r.side * prm.delta);
    EXPECT_LT(abs(off), prm.eps2);
  }
}

TEST(RealizeGeometry, SourceOrientationDoesNotMatter) {
  auto g = fixture("y");
  auto h = g;
  for (auto& e : h.edges) std::swap(e.src, e.dst);
  auto prm = choose_parameters(g, {});
  auto a = rewire(g, prm), b = rewire(h, prm);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(a[0].left.size(), b[0].left.size());
  EXPECT_EQ(a[0].right.size(), b[0].right.size());
  EXPECT_EQ(build_complex(g, prm, a).size(), build_complex(h, prm, b).size());
}

TEST(RealizeGeometry, DistanceToComplex) {
  auto g = fixture("edge");
  auto prm = choose_parameters(g, {});
  auto cx = build_complex(g, prm, rewire(g, prm));
  EXPECT_NEAR(distance_to_complex(cx, 0.5, 0.3), 0.3, 1e-12);
  EXPECT_NEAR(distance_to_complex(cx, -0.3, 0.4), 0.5, 1e-12);
}

TEST(Realize, PiecewiseModeOnY) {
  RealizationConfig cfg;
  cfg.piecewise = true;
  auto g = fixture("y");
  auto r = realize(g, cfg);
  EXPECT_TRUE(r.verified);
  EXPECT_FALSE(r.algebraic);
  EXPECT_TRUE(r.domain.curves.empty());
  EXPECT_TRUE(is_weakly_isomorphic(to_vdigraph(g), r.graph, {true, 4 * r.artifacts.params.eps1.get_d()}));
}

class RealizeFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(RealizeFixture, VerifiesExactly) {
  auto g = fixture(GetParam());
  auto r = realize(g, {});
  ASSERT_TRUE(r.verified) << r.failure;
  EXPECT_TRUE(r.algebraic);
  EXPECT_TRUE(is_weakly_isomorphic(to_vdigraph(g), r.graph));
  EXPECT_TRUE(validate_domain(r.domain).ok());
  const auto& a = r.artifacts;
  EXPECT_LE(a.fit_degree, 10);
  EXPECT_EQ(count_role(a.excisions, "tip"), degree_one(g));
  EXPECT_EQ(count_role(a.excisions, "pocket"), count_kind(a.inventory, FoldKind::Indefinite));
  EXPECT_EQ(r.domain.curves.size(), 1 + a.excisions.size());
  EXPECT_FALSE(r.witness.empty());

  auto rep = realization_report(g, r);
  for (auto key : {"parameters", "neighborhoods", "vertical_segments", "complex", "ledger", "fold_inventory",
                   "piecewise_graph", "excisions", "domain", "graph", "transcript", "witness"})
    EXPECT_TRUE(rep.contains(key)) << key;
  EXPECT_EQ(rep["verified"], true);
}

INSTANTIATE_TEST_SUITE_P(Corpus, RealizeFixture, ::testing::Values("edge", "y", "eyeglasses"));

TEST(Realize, BoundaryComponents) {
  EXPECT_EQ(realize(fixture("y"), {}).artifacts.boundary_components, 1);
  EXPECT_EQ(realize(fixture("eyeglasses"), {}).artifacts.boundary_components, 2);
}

TEST(Realize, HalvingDeltaKeepsTheGraph) {
  auto g = fixture("edge");
  auto r1 = realize(g, {});
  ASSERT_TRUE(r1.verified);
  RealizationConfig cfg;
  cfg.delta = r1.artifacts.params.delta / 2;
  auto r2 = realize(g, cfg);
  ASSERT_TRUE(r2.verified) << r2.failure;
  EXPECT_EQ(r2.artifacts.params.delta, r1.artifacts.params.delta / 2);
  EXPECT_TRUE(is_weakly_isomorphic(r1.graph, r2.graph));
}

TEST(Realize, TranslationInvariance) {
  auto g = fixture("y");
  auto h = g;
  for (auto& v : h.vertices) v.x += 1, v.y += q(1, 2);
  auto r1 = realize(g, {}), r2 = realize(h, {});
  ASSERT_TRUE(r1.verified);
  ASSERT_TRUE(r2.verified) << r2.failure;
  EXPECT_EQ(r1.artifacts.params.eps1, r2.artifacts.params.eps1);
  EXPECT_EQ(r1.artifacts.params.eps2, r2.artifacts.params.eps2);
  EXPECT_EQ(r1.artifacts.params.delta, r2.artifacts.params.delta);
  ASSERT_EQ(r1.artifacts.inventory.size(), r2.artifacts.inventory.size());
  for (size_t i = 0; i < r1.artifacts.inventory.size(); ++i) {
    EXPECT_EQ(r1.artifacts.inventory[i].at.first + 1, r2.artifacts.inventory[i].at.first);
    EXPECT_EQ(r1.artifacts.inventory[i].at.second + q(1, 2), r2.artifacts.inventory[i].at.second);
  }
  EXPECT_TRUE(is_weakly_isomorphic(r1.graph, r2.graph));
}

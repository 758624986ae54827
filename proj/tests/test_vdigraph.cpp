#include <gtest/gtest.h>

#include <random>

#include "prkit/error.hpp"
#include "prkit/vdigraph.hpp"

using namespace prkit;

namespace {

VDigraph make(const std::vector<Rational>& vals, const std::vector<std::pair<int, int>>& edges) {
  VDigraph g;
  for (size_t i = 0; i < vals.size(); ++i) g.add_vertex("v" + std::to_string(i), Interval(vals[i]), 0);
  g.ranks_from_values();
  for (size_t k = 0; k < edges.size(); ++k) g.add_edge("e" + std::to_string(k), edges[k].first, edges[k].second);
  return g;
}

VDigraph annulus() {
  return make({Rational(-1), Rational(-1, 2), Rational(1, 2), Rational(1)}, {{0, 1}, {1, 2}, {1, 2}, {2, 3}});
}

bool has_tag(const std::vector<Violation>& vs, const std::string& tag, const std::string& subject = "") {
  for (auto& v : vs)
    if (v.tag == tag && (subject.empty() || std::count(v.subjects.begin(), v.subjects.end(), subject))) return true;
  return false;
}

EmbeddedGraph embedded(const std::vector<std::tuple<std::string, Rational, Rational>>& vs,
                       const std::vector<std::pair<std::string, std::string>>& es) {
  EmbeddedGraph g;
  for (auto& [id, x, y] : vs) g.vertices.push_back({id, x, y});
  int k = 0;
  for (auto& [a, b] : es) g.edges.push_back({"e" + std::to_string(k++), g.find(a), g.find(b), {}});
  return g;
}

}  // namespace

TEST(VDigraph, NormalizeSuppressesPassThrough) {
  VDigraph path = make({Rational(0), Rational(1), Rational(2)}, {{0, 1}, {1, 2}});
  VDigraph n = normalize(path);
  ASSERT_EQ(n.vertices.size(), 2u);
  ASSERT_EQ(n.edges.size(), 1u);
  EXPECT_EQ(n.vertices[n.edges[0].src].id, "v0");
  EXPECT_EQ(n.vertices[n.edges[0].dst].id, "v2");
  EXPECT_EQ(n.vertices[1].rank, 1);
  VDigraph a = normalize(annulus());
  EXPECT_EQ(a.vertices.size(), 4u);
  EXPECT_EQ(a.edges.size(), 4u);
  VDigraph source = make({Rational(0), Rational(1), Rational(1)}, {{0, 1}, {0, 2}});
  EXPECT_EQ(normalize(source).vertices.size(), 3u);
}

TEST(VDigraph, NormalizeIsIdempotent) {
  VDigraph g = make({Rational(0), Rational(1), Rational(2), Rational(3), Rational(4)},
                    {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}});
  VDigraph once = normalize(g), twice = normalize(once);
  EXPECT_EQ(once.vertices.size(), twice.vertices.size());
  EXPECT_EQ(once.edges.size(), twice.edges.size());
  EXPECT_TRUE(is_isomorphic(once, twice));
}

TEST(VDigraph, IsomorphismExamples) {
  VDigraph a = annulus();
  // relabeled copy with permuted vertex order
  VDigraph b = make({Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2)}, {{1, 3}, {3, 2}, {2, 0}, {3, 2}});
  auto phi = find_isomorphism(a, b);
  ASSERT_TRUE(phi.has_value());
  EXPECT_EQ((*phi)[0], 1);
  EXPECT_EQ((*phi)[3], 0);
  VDigraph path4 = make({Rational(0), Rational(1), Rational(2), Rational(3)}, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_FALSE(is_isomorphic(a, path4));
  // star with centre 1 and two leaves: order pattern decides
  VDigraph p1 = make({Rational(0), Rational(1), Rational(2)}, {{0, 1}, {0, 2}});
  VDigraph p2 = make({Rational(0), Rational(2), Rational(1)}, {{0, 1}, {0, 2}});
  EXPECT_TRUE(is_isomorphic(p1, p2));
  VDigraph q1 = make({Rational(0), Rational(1), Rational(2)}, {{0, 1}, {1, 2}});
  VDigraph q2 = make({Rational(0), Rational(1), Rational(2)}, {{0, 2}, {1, 2}});
  EXPECT_FALSE(is_isomorphic(q1, q2));
  EXPECT_FALSE(is_isomorphic(q1, q2, {.check_order = false}));
}

TEST(VDigraph, TiesMustMapToTies) {
  VDigraph a = make({Rational(0), Rational(1), Rational(1)}, {{0, 1}, {0, 2}});
  VDigraph b = make({Rational(0), Rational(1), Rational(2)}, {{0, 1}, {0, 2}});
  EXPECT_FALSE(is_isomorphic(a, b));
  EXPECT_TRUE(is_isomorphic(a, b, {.check_order = false}));
  EXPECT_TRUE(is_isomorphic(a, b, {.check_order = true, .order_tolerance = 1.5}));
}

TEST(VDigraph, WeakIsomorphismExamples) {
  VDigraph edge = make({Rational(0), Rational(1)}, {{0, 1}});
  VDigraph sub = make({Rational(0), Rational(1, 5), Rational(2, 5), Rational(3, 5), Rational(4, 5), Rational(1)},
                      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  EXPECT_TRUE(is_weakly_isomorphic(edge, sub));
  VDigraph lens = make({Rational(0), Rational(1, 2), Rational(1)}, {{0, 1}, {1, 2}});
  EXPECT_TRUE(is_weakly_isomorphic(lens, edge));
  EXPECT_FALSE(is_weakly_isomorphic(annulus(), edge));
}

TEST(VDigraph, WeakIsoIsEquivalenceAndSubdivisionInvariant) {
  std::mt19937 rng(99);
  std::vector<VDigraph> pool;
  for (int k = 0; k < 12; ++k) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<Rational> vals;
    for (int i = 0; i < n; ++i) vals.emplace_back(i);
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
    for (int extra = 0; extra < 2; ++extra) {
      int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      if (a != b) es.push_back({std::min(a, b), std::max(a, b)});
    }
    pool.push_back(make(vals, es));
  }
  for (auto& g : pool) {
    EXPECT_TRUE(is_weakly_isomorphic(g, g));
    // subdivide every edge with a pass-through vertex at the midpoint value
    VDigraph s;
    for (auto& v : g.vertices) s.add_vertex(v.id, v.value, 0);
    for (auto& e : g.edges) {
      Rational m = (g.vertices[e.src].value.lo + g.vertices[e.dst].value.lo) / 2;
      int w = s.add_vertex("m" + e.id, Interval(m), 0);
      s.add_edge(e.id + "a", e.src, w);
      s.add_edge(e.id + "b", w, e.dst);
    }
    s.ranks_from_values();
    EXPECT_TRUE(is_weakly_isomorphic(g, s));
    EXPECT_TRUE(is_weakly_isomorphic(s, g));
  }
  for (size_t a = 0; a < pool.size(); ++a)
    for (size_t b = 0; b < pool.size(); ++b) {
      EXPECT_EQ(is_weakly_isomorphic(pool[a], pool[b]), is_weakly_isomorphic(pool[b], pool[a]));
      if (is_isomorphic(pool[a], pool[b])) EXPECT_TRUE(is_weakly_isomorphic(pool[a], pool[b]));
      for (size_t c = 0; c < pool.size(); ++c)
        if (is_weakly_isomorphic(pool[a], pool[b]) && is_weakly_isomorphic(pool[b], pool[c]))
          EXPECT_TRUE(is_weakly_isomorphic(pool[a], pool[c]));
    }
}

TEST(VDigraph, AmbiguousIntervalsThrow) {
  VDigraph g;
  g.add_vertex("a", Interval(Rational(0), Rational(2)), 0);
  g.add_vertex("b", Interval(Rational(1), Rational(3)), 0);
  EXPECT_THROW(g.ranks_from_values(), Error);
}

TEST(Hypotheses, YGraphIsOk) {
  auto g = embedded({{"A", Rational(-1), Rational(1)}, {"B", Rational(-1), Rational(-1)},
                     {"C", Rational(0), Rational(0)}, {"D", Rational(1), Rational(0)}},
                    {{"A", "C"}, {"B", "C"}, {"C", "D"}});
  EXPECT_TRUE(validate_theorem_hypotheses(g).empty());
  VDigraph v = to_vdigraph(g);
  EXPECT_EQ(v.vertices[0].rank, v.vertices[1].rank);
  EXPECT_TRUE(v.check().empty());
}

TEST(Hypotheses, Rejections) {
  auto path = embedded({{"a", Rational(0), Rational(0)}, {"b", Rational(1), Rational(0)}, {"c", Rational(2), Rational(0)}},
                       {{"a", "b"}, {"b", "c"}});
  EXPECT_TRUE(has_tag(validate_theorem_hypotheses(path), "degree-2", "b"));
  auto ext = embedded({{"a", Rational(0), Rational(1)}, {"b", Rational(0), Rational(0)}, {"c", Rational(0), Rational(-1)},
                       {"m", Rational(1), Rational(0)}},
                      {{"a", "m"}, {"b", "m"}, {"c", "m"}});
  EXPECT_TRUE(has_tag(validate_theorem_hypotheses(ext), "extremum-degree", "m"));
  auto cross = embedded({{"a", Rational(0), Rational(0)}, {"b", Rational(2), Rational(2)}, {"c", Rational(0), Rational(2)},
                         {"d", Rational(2), Rational(0)}},
                        {{"a", "b"}, {"c", "d"}});
  auto vs = validate_theorem_hypotheses(cross);
  EXPECT_TRUE(has_tag(vs, "embedding"));
  EXPECT_TRUE(has_tag(vs, "disconnected"));
  EmbeddedGraph vert = embedded({{"a", Rational(0), Rational(0)}, {"b", Rational(0), Rational(1)}}, {{"a", "b"}});
  EXPECT_TRUE(has_tag(validate_theorem_hypotheses(vert), "non-monotone-edge"));
}

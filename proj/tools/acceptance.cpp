// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "prkit/arrangements.hpp"
#include "prkit/error.hpp"
#include "prkit/io.hpp"
#include "prkit/lift.hpp"
#include "prkit/realize.hpp"
#include "prkit/sweep.hpp"

using namespace prkit;

namespace {

std::string fixtures = PRKIT_FIXTURES;

DomainSpec load_domain(const std::string& name) {
  return domain_from_json(read_json_file(fixtures + "/domains/" + name + ".json"));
}
EmbeddedGraph load_graph(const std::string& name) {
  return embedded_from_json(read_json_file(fixtures + "/graphs/" + name + ".json"));
}

bool contains(const Interval& iv, const Rational& q) { return iv.lo <= q && q <= iv.hi; }

// Interval meets s * sqrt(3)/2 for s = +1 or -1, decided with squares.
bool contains_half_sqrt3(const Interval& iv, int s) {
  const Rational t(3, 4);
  if (s > 0) return (sgn(iv.lo) <= 0 || iv.lo * iv.lo <= t) && sgn(iv.hi) >= 0 && iv.hi * iv.hi >= t;
  return sgn(iv.lo) <= 0 && iv.lo * iv.lo >= t && (sgn(iv.hi) >= 0 || iv.hi * iv.hi <= t);
}

Interval json_interval(const json& j) { return interval_from_json(j); }

int vertex_at(const VDigraph& g, const Rational& q) {
  for (size_t i = 0; i < g.vertices.size(); ++i)
    if (contains(g.vertices[i].value, q)) return static_cast<int>(i);
  return -1;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Check {
 public:
  explicit Check(std::ostringstream& d) : d_(d) {}
  bool operator()(bool ok, const std::string& what) {
    if (!ok) {
      d_ << (failed_ ? "; " : "") << what;
      failed_ = true;
    }
    return ok;
  }
  bool ok() const { return !failed_; }

 private:
  std::ostringstream& d_;
  bool failed_ = false;
};

Outcome criterion_disk() {
  std::ostringstream d;
  Check c(d);
  auto t0 = std::chrono::steady_clock::now();
  PRGraph pr = build_poincare_reeb(load_domain("disk"));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto& g = pr.graph;
  c(g.vertices.size() == 2, "vertex count " + std::to_string(g.vertices.size()));
  c(g.edges.size() == 1, "edge count " + std::to_string(g.edges.size()));
  int a = vertex_at(g, -1), b = vertex_at(g, 1);
  c(a >= 0 && b >= 0 && a != b, "certificates do not contain -1 and 1");
  if (c.ok()) c(g.edges[0].src == a && g.edges[0].dst == b, "edge not oriented from -1 to 1");
  c(secs < 1, "runtime " + std::to_string(secs) + " s");
  if (c.ok()) d << "2 vertices {-1, 1}, edge -1 -> 1, " << secs << " s";
  return {c.ok(), d.str()};
}

Outcome criterion_annulus() {
  std::ostringstream d;
  Check c(d);
  auto t0 = std::chrono::steady_clock::now();
  PRGraph pr = build_poincare_reeb(load_domain("annulus"));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto& g = pr.graph;
  c(g.vertices.size() == 4, "vertex count " + std::to_string(g.vertices.size()));
  const Rational vals[] = {-1, Rational(-1, 2), Rational(1, 2), 1};
  int idx[4];
  for (int k = 0; k < 4; ++k) {
    idx[k] = vertex_at(g, vals[k]);
    c(idx[k] >= 0, "no vertex at " + vals[k].get_str());
  }
  if (c.ok()) {
    std::multiset<std::pair<int, int>> got, want{{0, 1}, {1, 2}, {1, 2}, {2, 3}};
    for (auto& e : g.edges) {
      int s = -1, t = -1;
      for (int k = 0; k < 4; ++k) {
        if (idx[k] == e.src) s = k;
        if (idx[k] == e.dst) t = k;
      }
      got.insert({s, t});
    }
    c(got == want, "edge multiset differs");
  }
  c(secs < 1, "runtime " + std::to_string(secs) + " s");
  if (c.ok()) d << "4 vertices {-1, -1/2, 1/2, 1}, edges as expected, " << secs << " s";
  return {c.ok(), d.str()};
}

Outcome criterion_lens() {
  std::ostringstream d;
  Check c(d);
  PRGraph pr = build_poincare_reeb(load_domain("lens"));
  const auto& g = pr.graph;
  c(g.vertices.size() == 3, "vertex count " + std::to_string(g.vertices.size()));
  for (auto q : {Rational(0), Rational(1, 2), Rational(1)}) c(vertex_at(g, q) >= 0, "no vertex at " + q.get_str());
  int mid = vertex_at(g, Rational(1, 2));
  if (mid >= 0) {
    bool up = false, down = false;
    for (auto& p : g.vertices[mid].provenance["points"]) {
      if (p["type"] != "crossing") continue;
      Interval x = json_interval(p["x"]), y = json_interval(p["y"]);
      if (!contains(x, Rational(1, 2))) continue;
      up |= contains_half_sqrt3(y, 1);
      down |= contains_half_sqrt3(y, -1);
    }
    c(up && down, "provenance of the V = 1/2 vertex lacks a crossing");
  }
  VDigraph edge;
  edge.add_vertex("a", {0, 0}, 0);
  edge.add_vertex("b", {1, 1}, 1);
  edge.add_edge("e", 0, 1);
  c(is_weakly_isomorphic(g, edge), "not weakly isomorphic to a single edge");
  if (c.ok()) d << "3 vertices {0, 1/2, 1}, both crossings in the provenance, weakly a single edge";
  return {c.ok(), d.str()};
}

Outcome criterion_oracle(int count, unsigned seed, int resolution) {
  std::ostringstream d;
  Check c(d);
  auto t0 = std::chrono::steady_clock::now();
  auto cases = random_conic_arrangements(count, seed, resolution);
  int agree = 0;
  std::string first_bad;
  for (size_t i = 0; i < cases.size(); ++i) {
    bool ok = false;
    try {
      ok = is_weakly_isomorphic(build_poincare_reeb(cases[i]).graph, raster_oracle(cases[i], resolution));
    } catch (const Error& e) {
      if (first_bad.empty()) first_bad = "case " + std::to_string(i) + ": " + e.what();
    }
    if (!ok && first_bad.empty()) first_bad = "case " + std::to_string(i) + " differs";
    agree += ok;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c(static_cast<int>(cases.size()) == count, "generated only " + std::to_string(cases.size()));
  c(agree == static_cast<int>(cases.size()), std::to_string(agree) + " agree; first: " + first_bad);
  c(secs < 60, "runtime " + std::to_string(secs) + " s");
  if (c.ok()) d << agree << "/" << cases.size() << " agree at resolution " << resolution << ", seed " << seed << ", "
                << secs << " s";
  return {c.ok(), d.str()};
}

const char* const kCorpus[] = {"edge", "y", "inverted_y", "double_y", "eyeglasses", "star"};

Outcome criterion_realize(std::vector<DomainSpec>& realized) {
  std::ostringstream d;
  Check c(d);
  auto t0 = std::chrono::steady_clock::now();
  std::ostringstream degrees;
  for (auto name : kCorpus) {
    auto g = load_graph(name);
    c(validate_theorem_hypotheses(g).empty(), std::string(name) + " violates the hypotheses");
    Realization r;
    try {
      r = realize(g, {});
    } catch (const Error& e) {
      c(false, std::string(name) + ": " + e.tag() + ": " + e.what());
      continue;
    }
    if (!c(r.verified && r.algebraic, std::string(name) + " not realized: " + r.failure)) continue;
    // Independent re-check of the emitted domain.
    c(validate_domain(r.domain).ok(), std::string(name) + ": domain fails validation");
    c(is_weakly_isomorphic(build_poincare_reeb(r.domain).graph, to_vdigraph(g)),
      std::string(name) + ": PR graph not weakly isomorphic to the input");
    degrees << " " << name << ":" << r.artifacts.fit_degree;
    realized.push_back(r.domain);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c(secs < 300, "runtime " + std::to_string(secs) + " s");
  if (c.ok()) d << "6/6 verified, degrees" << degrees.str() << ", " << secs << " s";
  return {c.ok(), d.str()};
}

bool has_violation(const std::vector<Violation>& vs, const std::string& tag, const std::string& subject,
                   std::optional<std::pair<Rational, Rational>> at) {
  for (auto& v : vs) {
    if (v.tag != tag) continue;
    if (!subject.empty() && std::find(v.subjects.begin(), v.subjects.end(), subject) == v.subjects.end()) continue;
    if (at) {
      bool found = false;
      for (auto& w : v.points) found |= contains(w.x, at->first) && contains(w.y, at->second);
      if (!found) continue;
    }
    return true;
  }
  return false;
}

Outcome criterion_rejections() {
  std::ostringstream d;
  Check c(d);
  const std::pair<Rational, Rational> origin{0, 0};
  c(has_violation(validate_theorem_hypotheses(load_graph("path3")), "degree-2", "b", std::pair<Rational, Rational>{1, 0}),
    "path3: no degree-2 violation at b");
  c(has_violation(validate_theorem_hypotheses(load_graph("extremum3")), "extremum-degree", "D",
                  std::pair<Rational, Rational>{1, 0}),
    "extremum3: no extremum-degree violation at D");
  c(has_violation(validate_domain(load_domain("nodal")).violations, "singular-point", "n", origin),
    "nodal: no singular-point violation at the origin");
  c(has_violation(validate_domain(load_domain("triple_point")).violations, "triple-point", "", origin),
    "triple point: no triple-point violation at the origin");
  if (c.ok()) d << "degree-2, extremum-degree, singular-point, triple-point with witnesses";
  return {c.ok(), d.str()};
}

BPoly product(const DomainSpec& s) {
  BPoly p = BPoly::constant(1);
  for (auto& c : s.curves) p = p * c.f;
  return p;
}

Outcome criterion_lift(const std::vector<DomainSpec>& realized) {
  std::ostringstream d;
  Check c(d);
  DomainSpec disk = load_domain("disk");
  LiftSpec l;
  l.assignment[disk.curves[0].id] = "a";
  l.multiplicity["a"] = 1;
  LiftDocument doc = emit_lift(disk, l);
  c(doc.equations.size() == 1, "disk: equation count");
  if (c.ok()) {
    const auto& eq = doc.equations[0];
    c(eq.base == parse_poly("1 - x^2 - y^2"), "disk: base polynomial differs");
    c(eq.yvars == std::vector<std::string>{"y_{a,1}", "y_{a,2}"}, "disk: y variables differ");
    c(equation_text(eq) == "1 - x1^2 - x2^2 - y_{a,1}^2 - y_{a,2}^2 = 0", "disk: text is " + equation_text(eq));
  }
  std::vector<std::pair<std::string, DomainSpec>> all;
  for (auto name : {"disk", "annulus", "lens"}) all.push_back({name, load_domain(name)});
  for (size_t i = 0; i < realized.size(); ++i) all.push_back({"realized-" + std::to_string(i), realized[i]});
  int systems = 0;
  for (auto& [name, s] : all) {
    // One label per curve, then everything that may share a label in one.
    std::vector<LiftSpec> parts{default_lift(s)};
    LiftSpec one;
    for (auto& cv : s.curves) one.assignment[cv.id] = "all";
    one.multiplicity["all"] = 2;
    if (validate_partition(s, one).empty()) parts.push_back(one);
    for (auto& p : parts) {
      LiftDocument ld = emit_lift(s, p);
      BPoly prod = BPoly::constant(1);
      for (auto& eq : ld.equations) {
        BPoly want = BPoly::constant(1);
        for (auto& id : eq.curves) want = want * s.curves[s.curve_index(id)].f;
        c(eq.base == want, name + ": label " + eq.label + " is not the product of its curves");
        prod = prod * eq.base;
      }
      c(prod == product(s), name + ": y = 0 does not recover the product");
      ++systems;
    }
  }
  if (c.ok()) d << "disk equation exact; " << systems << " systems recover the product at y = 0";
  return {c.ok(), d.str()};
}

struct Verdict {
  bool valid = false;
  std::string first_tag;
  std::optional<VDigraph> graph;
};

Verdict verdict(const DomainSpec& s) {
  Verdict v;
  auto rep = validate_domain(s);
  v.valid = rep.ok();
  if (!v.valid) v.first_tag = rep.violations.front().tag;
  else v.graph = build_poincare_reeb(s).graph;
  return v;
}

bool same_verdict(const Verdict& a, const Verdict& b) {
  if (a.valid != b.valid || a.first_tag != b.first_tag) return false;
  if (!a.valid) return true;
  return is_isomorphic(*a.graph, *b.graph) || is_weakly_isomorphic(*a.graph, *b.graph);
}

Outcome criterion_invariance(const std::vector<DomainSpec>& realized) {
  std::ostringstream d;
  Check c(d);
  std::vector<std::pair<std::string, DomainSpec>> all;
  for (auto name : {"disk", "annulus", "lens", "far_circle", "nodal", "triple_point"})
    all.push_back({name, load_domain(name)});
  for (size_t i = 0; i < realized.size(); ++i) all.push_back({std::string("realized-") + kCorpus[i], realized[i]});
  const Rational tx(1, 3), ty(-2, 5);
  int runs = 0;
  for (auto& [name, s] : all) {
    const Verdict base = verdict(s);
    DomainSpec scaled = s;
    for (size_t j = 0; j < scaled.curves.size(); ++j) scaled.curves[j].f = scaled.curves[j].f * Rational(2 * j + 3, 5);
    DomainSpec permuted = s;
    std::reverse(permuted.curves.begin(), permuted.curves.end());
    if (permuted.curves.size() > 2) std::rotate(permuted.curves.begin(), permuted.curves.begin() + 1, permuted.curves.end());
    DomainSpec moved = s;
    for (auto& cv : moved.curves) cv.f = cv.f.affine(1, -tx, 1, -ty);
    moved.bx += tx;
    moved.by += ty;
    moved.box = {s.box.xmin + tx, s.box.xmax + tx, s.box.ymin + ty, s.box.ymax + ty};
    const std::pair<const char*, const DomainSpec*> variants[] = {
        {"scaling", &scaled}, {"permutation", &permuted}, {"translation", &moved}};
    for (auto& [label, t] : variants) {
      Verdict v = verdict(*t);
      ++runs;
      if (!c(same_verdict(base, v), name + ": " + label + " changes the verdict")) continue;
      if (base.valid && std::string(label) == "translation") {
        // Vertex values move by exactly tx.
        auto a = normalize(*base.graph), b = normalize(*v.graph);
        auto m = find_isomorphism(a, b);
        bool shifted = m.has_value();
        if (m)
          for (size_t k = 0; k < m->size(); ++k) {
            const Interval& p = a.vertices[k].value;
            const Interval& q = b.vertices[(*m)[k]].value;
            shifted = shifted && p.lo + tx <= q.hi && q.lo <= p.hi + tx;
          }
        c(shifted, name + ": translated values do not match");
      }
    }
  }
  if (c.ok()) d << runs << " transformed runs over " << all.size() << " domains, verdicts unchanged";
  return {c.ok(), d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prkit acceptance suite"};
  int count = 50, resolution = 1024;
  unsigned seed = 2024;
  app.add_option("--fixtures", fixtures, "Fixture directory");
  app.add_option("--oracle-count", count, "Random arrangements for the oracle criterion");
  app.add_option("--seed", seed, "Seed for the random arrangements");
  app.add_option("--resolution", resolution, "Raster resolution for the oracle criterion");
  CLI11_PARSE(app, argc, argv);

  std::vector<DomainSpec> realized;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"disk", criterion_disk},
      {"annulus", criterion_annulus},
      {"lens", criterion_lens},
      {"oracle equivalence", [&] { return criterion_oracle(count, seed, resolution); }},
      {"realization round trip", [&] { return criterion_realize(realized); }},
      {"validator rejections", criterion_rejections},
      {"lift emitter", [&] { return criterion_lift(realized); }},
      {"invariance", [&] { return criterion_invariance(realized); }},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char head[96];
    std::snprintf(head, sizeof head, "[%s] criterion %zu (%s, %.2f s): ", o.pass ? "PASS" : "FAIL", i + 1,
                  criteria[i].first.c_str(), secs);
    std::cout << head << o.detail << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : "acceptance: all criteria pass")
            << std::endl;
  return failed ? 1 : 0;
}

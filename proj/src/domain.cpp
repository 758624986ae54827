#include "prkit/domain.hpp"

#include <optional>
#include <set>

#include "prkit/error.hpp"
#include "prkit/sweep.hpp"

namespace prkit {

int DomainSpec::curve_index(const std::string& id) const {
  for (size_t i = 0; i < curves.size(); ++i)
    if (curves[i].id == id) return static_cast<int>(i);
  return -1;
}

const char* to_string(FoldKind k) {
  switch (k) {
    case FoldKind::Definite: return "definite";
    case FoldKind::Indefinite: return "indefinite";
    default: return "unclassified";
  }
}

namespace {

WitnessPoint witness(AlgebraicReal x, AlgebraicReal y) {
  x.refine_bits(48);
  y.refine_bits(48);
  return {x.interval(), y.interval()};
}

bool same_point(AlgebraicReal ax, AlgebraicReal ay, AlgebraicReal bx, AlgebraicReal by) {
  return compare(ax, bx) == 0 && compare(ay, by) == 0;
}

std::optional<std::vector<SystemRoot>> try_solve_global(const BPoly& f, const BPoly& g) {
  try {
    return solve_system_global(f, g);
  } catch (const Error& e) {
    if (e.tag() != "positive-dimensional") throw;
    return std::nullopt;
  }
}

// Interval fallback: a partial that stays away from zero near the point.
bool partial_vanishes(const BPoly& p, AlgebraicReal x, AlgebraicReal y) {
  for (int bits = 8; bits <= 256; bits *= 2) {
    x.refine_bits(bits);
    y.refine_bits(bits);
    if (!p.eval(x.interval(), y.interval()).contains_zero()) return false;
  }
  return true;
}

std::string fmt_point(AlgebraicReal x, AlgebraicReal y) {
  return "(" + std::to_string(x.approx()) + ", " + std::to_string(y.approx()) + ")";
}

}  // namespace

CurveReport validate_curve_nonsingular(const CurveSpec& c, const Box& box) {
  CurveReport rep;
  const BPoly fx = c.f.dx(), fy = c.f.dy();
  if (c.f.degree() < 1) {
    rep.violations.push_back({"constant-curve", "curve " + c.id + " is constant", {c.id}, {}});
    return rep;
  }
  auto s_y = try_solve_global(c.f, fy);
  auto s_x = try_solve_global(c.f, fx);
  std::vector<std::pair<AlgebraicReal, AlgebraicReal>> singular;
  if (s_y && s_x) {
    rep.global = true;
    for (auto& p : *s_y)
      for (auto& q : *s_x)
        if (same_point(p.x, p.y, q.x, q.y)) {
          singular.emplace_back(p.x, p.y);
          break;
        }
  } else if (s_y || s_x) {
    rep.global = true;
    const BPoly& other = s_y ? fx : fy;
    for (auto& p : s_y ? *s_y : *s_x)
      if (partial_vanishes(other, p.x, p.y)) singular.emplace_back(p.x, p.y);
    rep.notes.push_back("curve " + c.id + ": one polar system is positive-dimensional; the other partial was checked by interval refinement");
  } else {
    rep.violations.push_back({"singular-locus",
                              "curve " + c.id + " has a positive-dimensional singular locus (repeated factor)",
                              {c.id},
                              {}});
    return rep;
  }
  for (auto& [x, y] : singular) {
    AlgebraicReal xx = x, yy = y;
    bool inside = xx.compare(box.xmin) >= 0 && xx.compare(box.xmax) <= 0 && yy.compare(box.ymin) >= 0 &&
                  yy.compare(box.ymax) <= 0;
    if (inside)
      rep.violations.push_back(
          {"singular-point", "curve " + c.id + " is singular at " + fmt_point(x, y), {c.id}, {witness(x, y)}});
    else
      rep.notes.push_back("curve " + c.id + " is singular outside the working box at " + fmt_point(x, y));
  }
  return rep;
}

DomainReport validate_domain(const DomainSpec& spec) {
  DomainReport rep;
  std::set<std::string> ids;
  for (auto& c : spec.curves)
    if (!ids.insert(c.id).second)
      rep.violations.push_back({"duplicate-curve-id", "curve id " + c.id + " is used twice", {c.id}, {}});
  if (spec.curves.empty()) rep.violations.push_back({"no-curves", "the domain has no curves", {}, {}});
  if (!rep.ok()) return rep;

  for (auto& c : spec.curves) {
    CurveReport cr = validate_curve_nonsingular(c, spec.box);
    for (auto& v : cr.violations) rep.violations.push_back(v);
    for (auto& n : cr.notes) rep.notes.push_back(n);
    if (!cr.global) rep.notes.push_back("curve " + c.id + ": non-singularity certified in the box only");
  }

  bool positive = true;
  for (auto& c : spec.curves)
    if (sgn(c.f.eval(spec.bx, spec.by)) <= 0) {
      positive = false;
      rep.violations.push_back({"basepoint-not-positive",
                                "curve " + c.id + " is not positive at the basepoint",
                                {c.id},
                                {{Interval(spec.bx), Interval(spec.by)}}});
    }
  if (!spec.box.contains(spec.bx, spec.by)) {
    rep.violations.push_back({"basepoint-outside-box", "the basepoint lies outside the working box", {}, {}});
    positive = false;
  }
  // The sweep needs non-singular curves and a positive basepoint.
  if (!rep.ok() || !positive) return rep;

  std::unique_ptr<Sweep> sw;
  try {
    sw = std::make_unique<Sweep>(spec);
  } catch (const Error& e) {
    rep.violations.push_back({e.tag(), e.what(), {}, {}});
    return rep;
  }
  if (sw->touches_box()) {
    rep.violations.push_back(
        {"unbounded-component", "the closure of the basepoint component reaches the working box", {}, {}});
    return rep;
  }
  auto meets = sw->curves_meeting_closure();
  for (size_t j = 0; j < spec.curves.size(); ++j)
    if (!meets[j])
      rep.violations.push_back({"curve-disjoint-from-closure",
                                "curve " + spec.curves[j].id + " does not meet the closure of the component",
                                {spec.curves[j].id},
                                {}});

  const auto& cps = sw->crit_points();
  auto closure = sw->closure_points();
  for (int ci : closure) {
    const CritPoint& cp = cps[ci];
    if (cp.kind == CritKind::Crossing && !cp.transverse)
      rep.violations.push_back({"non-transverse-crossing",
                                "curves " + spec.curves[cp.a].id + " and " + spec.curves[cp.b].id +
                                    " meet tangentially at " + fmt_point(cp.x, cp.y),
                                {spec.curves[cp.a].id, spec.curves[cp.b].id},
                                {witness(cp.x, cp.y)}});
  }
  for (auto& cluster : sw->closure_clusters()) {
    // Exactly coincident crossings give the curves through one point.
    std::vector<char> used(cluster.size(), 0);
    for (size_t i = 0; i < cluster.size(); ++i) {
      const CritPoint& p = cps[cluster[i]];
      if (used[i] || p.kind != CritKind::Crossing) continue;
      std::set<int> curves{p.a, p.b};
      for (size_t k = i + 1; k < cluster.size(); ++k) {
        const CritPoint& q = cps[cluster[k]];
        if (q.kind != CritKind::Crossing || !same_point(p.x, p.y, q.x, q.y)) continue;
        used[k] = 1;
        curves.insert(q.a);
        curves.insert(q.b);
      }
      if (curves.size() < 3) continue;
      std::vector<std::string> names;
      for (int j : curves) names.push_back(spec.curves[j].id);
      rep.violations.push_back({"triple-point",
                                std::to_string(curves.size()) + " curves pass through " + fmt_point(p.x, p.y),
                                names,
                                {witness(p.x, p.y)}});
    }
  }
  return rep;
}

FSet compute_f_set(const DomainSpec& spec) {
  DomainReport rep = validate_domain(spec);
  if (!rep.ok()) throw Error("invalid-domain", rep.violations.front().tag + ": " + rep.violations.front().message);
  Sweep sw(spec);
  const auto& cps = sw.crit_points();
  auto closure = sw.closure_points();
  FSet out;
  for (int ci : closure)
    if (cps[ci].kind == CritKind::Crossing)
      out.crossings.push_back({cps[ci].x, cps[ci].y, spec.curves[cps[ci].a].id, spec.curves[cps[ci].b].id});
  for (int ci : closure) {
    const CritPoint& f = cps[ci];
    if (f.kind != CritKind::Fold) continue;
    for (int cj : closure) {
      const CritPoint& c = cps[cj];
      if (c.kind == CritKind::Crossing && (c.a == f.a || c.b == f.a) && same_point(f.x, f.y, c.x, c.y))
        throw Error("non-generic coincidence", "a fold of curve " + spec.curves[f.a].id +
                                                   " lies on a crossing at " + fmt_point(f.x, f.y));
    }
    out.folds.push_back({f.x, f.y, spec.curves[f.a].id, sw.fold_kind(ci)});
  }
  return out;
}

}  // namespace prkit

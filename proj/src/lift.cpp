#include "prkit/lift.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "prkit/error.hpp"

namespace prkit {

std::vector<Violation> validate_partition(const DomainSpec& spec, const LiftSpec& lift) {
  std::vector<Violation> out;
  std::set<std::string> used;
  for (auto& c : spec.curves) {
    auto it = lift.assignment.find(c.id);
    if (it == lift.assignment.end())
      out.push_back({"unassigned-curve", "curve " + c.id + " has no label", {c.id}, {}});
    else
      used.insert(it->second);
  }
  for (auto& [cid, label] : lift.assignment) {
    if (spec.curve_index(cid) < 0) out.push_back({"unknown-curve", "no curve named " + cid, {cid}, {}});
    if (!lift.multiplicity.count(label))
      out.push_back({"missing-multiplicity", "label " + label + " has no multiplicity", {label}, {}});
  }
  for (auto& [label, m0] : lift.multiplicity) {
    if (!used.count(label)) out.push_back({"not-surjective", "label " + label + " is assigned to no curve", {label}, {}});
    if (m0 < 0) out.push_back({"bad-multiplicity", "label " + label + " has a negative multiplicity", {label}, {}});
  }
  if (!out.empty()) return out;
  FSet fs = compute_f_set(spec);
  for (auto& c : fs.crossings) {
    const std::string& la = lift.assignment.at(c.curve_a);
    if (la != lift.assignment.at(c.curve_b)) continue;
    AlgebraicReal x = c.x, y = c.y;
    x.refine_bits(48);
    y.refine_bits(48);
    out.push_back({"shared-label-at-crossing",
                   "curves " + c.curve_a + " and " + c.curve_b + " cross on the closure but share label " + la,
                   {c.curve_a, c.curve_b},
                   {{x.interval(), y.interval()}}});
  }
  return out;
}

LiftDocument emit_lift(const DomainSpec& spec, const LiftSpec& lift) {
  auto vs = validate_partition(spec, lift);
  if (!vs.empty()) throw Error("invalid-partition", vs.front().tag + ": " + vs.front().message);
  LiftDocument doc;
  doc.variables = {"x1", "x2"};
  for (auto& [label, m0] : lift.multiplicity) {
    LiftEquation eq;
    eq.label = label;
    eq.base = BPoly::constant(1);
    for (auto& c : spec.curves)
      if (lift.assignment.at(c.id) == label) {
        eq.curves.push_back(c.id);
        eq.base = eq.base * c.f;
      }
    for (int k = 1; k <= m0 + 1; ++k) eq.yvars.push_back("y_{" + label + "," + std::to_string(k) + "}");
    doc.variables.insert(doc.variables.end(), eq.yvars.begin(), eq.yvars.end());
    doc.ambient_dimension += m0 + 1;
    doc.equations.push_back(std::move(eq));
  }
  return doc;
}

std::string equation_text(const LiftEquation& eq) {
  // Graded order: total degree ascending, then x1 before x2.
  std::vector<std::pair<std::pair<int, int>, Rational>> terms(eq.base.terms().begin(), eq.base.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](auto& a, auto& b) {
    int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da < db;
    return a.first.first > b.first.first;
  });
  std::ostringstream os;
  bool first = true;
  auto sign = [&](bool negative) {
    if (first) os << (negative ? "-" : "");
    else os << (negative ? " - " : " + ");
    first = false;
  };
  auto var = [&](const char* name, int e, bool& need_star) {
    if (e == 0) return;
    os << (need_star ? "*" : "") << name << (e > 1 ? "^" + std::to_string(e) : "");
    need_star = true;
  };
  for (auto& [k, c] : terms) {
    sign(sgn(c) < 0);
    Rational a = abs(c);
    bool need_star = false;
    if (a != 1 || k.first + k.second == 0) {
      os << a.get_str();
      need_star = true;
    }
    var("x1", k.first, need_star);
    var("x2", k.second, need_star);
  }
  for (auto& y : eq.yvars) {
    sign(true);
    os << y << "^2";
  }
  if (first) os << "0";
  os << " = 0";
  return os.str();
}

json lift_to_json(const LiftDocument& doc) {
  json eqs = json::array();
  for (auto& eq : doc.equations) {
    json terms = json::array();
    for (auto& [k, c] : eq.base.terms())
      terms.push_back({{"c", format_rational(c)}, {"monomial", {{"x1", k.first}, {"x2", k.second}}}});
    for (auto& y : eq.yvars) terms.push_back({{"c", "-1/1"}, {"monomial", {{y, 2}}}});
    eqs.push_back({{"label", eq.label}, {"curves", eq.curves}, {"terms", terms}, {"text", equation_text(eq)}});
  }
  return {{"format", kFormat},
          {"kind", "lift"},
          {"variables", doc.variables},
          {"ambient_dimension", doc.ambient_dimension},
          {"projection", "x1"},
          {"equations", eqs},
          {"asserted_not_checked",
           "non-singularity of the lifted set and the Morse-Bott property of the projection to x1 are not verified"}};
}

LiftSpec lift_from_json(const json& j) {
  if (!j.is_object()) throw Error("schema", "/: expected an object");
  if (j.contains("format") && j["format"] != kFormat) throw Error("schema", "/format: expected \"prkit/1\"");
  LiftSpec l;
  if (!j.contains("assignment") || !j["assignment"].is_object()) throw Error("schema", "/assignment: expected an object");
  if (!j.contains("multiplicity") || !j["multiplicity"].is_object())
    throw Error("schema", "/multiplicity: expected an object");
  for (auto& [k, v] : j["assignment"].items()) {
    if (!v.is_string()) throw Error("schema", "/assignment/" + k + ": expected a label string");
    l.assignment[k] = v.get<std::string>();
  }
  for (auto& [k, v] : j["multiplicity"].items()) {
    if (!v.is_number_integer()) throw Error("schema", "/multiplicity/" + k + ": expected an integer");
    l.multiplicity[k] = v.get<int>();
  }
  return l;
}

LiftSpec default_lift(const DomainSpec& spec) {
  LiftSpec l;
  for (auto& c : spec.curves) {
    l.assignment[c.id] = c.id;
    l.multiplicity[c.id] = 0;
  }
  return l;
}

}  // namespace prkit

#include "prkit/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "prkit/error.hpp"

namespace prkit {

namespace {

[[noreturn]] void schema(const std::string& at, const std::string& what) {
  throw Error("schema", (at.empty() ? "/" : at) + ": " + what);
}

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  BPoly parse() {
    BPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw Error("parse", "polynomial '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  BPoly expr() {
    BPoly r;
    bool neg = eat('-');
    if (!neg) eat('+');
    r = neg ? -term() : term();
    for (;;) {
      if (eat('+')) r = r + term();
      else if (eat('-')) r = r - term();
      else return r;
    }
  }
  BPoly term() {
    BPoly r = power();
    for (;;) {
      if (eat('*')) {
        r = r * power();
      } else if (eat('/')) {
        BPoly d = power();
        if (d.degree() > 0 || d.is_zero()) fail("division by a non-constant or zero");
        r = r * (Rational(1) / d.coeff(0, 0));
      } else {
        return r;
      }
    }
  }
  BPoly power() {
    BPoly b = atom();
    if (eat('^')) {
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      int e = std::stoi(s_.substr(start, pos_ - start));
      BPoly r = BPoly::constant(1);
      for (int i = 0; i < e; ++i) r = r * b;
      return r;
    }
    return b;
  }
  BPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      BPoly r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == 'x' || c == 'y') {
      ++pos_;
      return c == 'x' ? BPoly::x() : BPoly::y();
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return BPoly::constant(parse_rational(s_.substr(start, pos_ - start)));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

Rational rational_at(const json& j, const std::string& at) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      schema(at, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  schema(at, "expected a rational string \"n/d\" or an integer");
}

const json& member(const json& j, const char* key, const std::string& at) {
  if (!j.is_object()) schema(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(at, std::string("missing \"") + key + "\"");
  return *it;
}

std::string string_at(const json& j, const std::string& at) {
  if (!j.is_string()) schema(at, "expected a string");
  return j.get<std::string>();
}

int int_at(const json& j, const std::string& at) {
  if (!j.is_number_integer()) schema(at, "expected an integer");
  return j.get<int>();
}

const json& array_at(const json& j, const std::string& at) {
  if (!j.is_array()) schema(at, "expected an array");
  return j;
}

void check_format(const json& j) {
  if (!j.is_object()) schema("", "expected an object");
  auto it = j.find("format");
  if (it != j.end() && (!it->is_string() || it->get<std::string>() != kFormat))
    schema("/format", std::string("expected \"") + kFormat + "\"");
}

}  // namespace

BPoly parse_poly(const std::string& text) { return PolyParser(text).parse(); }

json interval_to_json(const Interval& iv) { return {{"lo", format_rational(iv.lo)}, {"hi", format_rational(iv.hi)}}; }

json algebraic_to_json(AlgebraicReal a, int bits) {
  if (!a.is_exact()) a.refine_bits(bits);
  json j = interval_to_json(a.interval());
  if (a.is_exact()) {
    j["exact"] = format_rational(a.lo());
  } else {
    std::vector<std::string> cs;
    for (auto& c : a.poly().c) cs.push_back(c.get_str());
    j["poly"] = cs;
  }
  j["approx"] = a.approx();
  return j;
}

json poly_to_json(const BPoly& f) {
  json terms = json::array();
  for (auto& [k, c] : f.terms()) terms.push_back({{"i", k.first}, {"j", k.second}, {"c", format_rational(c)}});
  return {{"terms", terms}, {"text", f.to_string()}};
}

json domain_to_json(const DomainSpec& d) {
  json curves = json::array();
  for (auto& c : d.curves) curves.push_back({{"id", c.id}, {"f", poly_to_json(c.f)}});
  return {{"format", kFormat},
          {"curves", curves},
          {"basepoint", {format_rational(d.bx), format_rational(d.by)}},
          {"box",
           {{"xmin", format_rational(d.box.xmin)},
            {"xmax", format_rational(d.box.xmax)},
            {"ymin", format_rational(d.box.ymin)},
            {"ymax", format_rational(d.box.ymax)}}}};
}

json graph_to_json(const VDigraph& g) {
  json vs = json::array(), es = json::array();
  for (auto& v : g.vertices) {
    json jv = {{"id", v.id}, {"V", interval_to_json(v.value)}, {"rank", v.rank}};
    if (!v.provenance.is_null()) jv["provenance"] = v.provenance;
    vs.push_back(jv);
  }
  for (auto& e : g.edges) {
    json je = {{"id", e.id}, {"src", g.vertices[e.src].id}, {"dst", g.vertices[e.dst].id}};
    if (!e.provenance.is_null()) je["provenance"] = e.provenance;
    es.push_back(je);
  }
  return {{"format", kFormat}, {"kind", "vdigraph"}, {"vertices", vs}, {"edges", es}};
}

json embedded_to_json(const EmbeddedGraph& g) {
  json vs = json::array(), es = json::array();
  for (auto& v : g.vertices) vs.push_back({{"id", v.id}, {"x", format_rational(v.x)}, {"y", format_rational(v.y)}});
  for (auto& e : g.edges) {
    json via = json::array();
    for (auto& [x, y] : e.via) via.push_back({format_rational(x), format_rational(y)});
    es.push_back({{"id", e.id}, {"src", g.vertices[e.src].id}, {"dst", g.vertices[e.dst].id}, {"via", via}});
  }
  return {{"format", kFormat}, {"kind", "embedded-graph"}, {"vertices", vs}, {"edges", es}};
}

json violations_to_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (auto& v : vs) {
    json pts = json::array();
    for (auto& p : v.points) pts.push_back({{"x", interval_to_json(p.x)}, {"y", interval_to_json(p.y)}});
    out.push_back({{"tag", v.tag}, {"message", v.message}, {"subjects", v.subjects}, {"witness", pts}});
  }
  return out;
}

json fset_to_json(const FSet& f) {
  json cs = json::array(), fs = json::array();
  for (auto& c : f.crossings)
    cs.push_back({{"x", algebraic_to_json(c.x)}, {"y", algebraic_to_json(c.y)}, {"curves", {c.curve_a, c.curve_b}}});
  for (auto& p : f.folds)
    fs.push_back({{"x", algebraic_to_json(p.x)},
                  {"y", algebraic_to_json(p.y)},
                  {"curve", p.curve},
                  {"kind", to_string(p.kind)}});
  return {{"format", kFormat}, {"crossings", cs}, {"folds", fs}};
}

json slice_to_json(const SliceProfile& s) {
  json ivs = json::array();
  for (auto& iv : s.intervals)
    ivs.push_back({{"lo", algebraic_to_json(iv.lo)},
                   {"hi", algebraic_to_json(iv.hi)},
                   {"lo_curve", iv.lo_curve},
                   {"hi_curve", iv.hi_curve},
                   {"member", iv.member}});
  return {{"format", kFormat}, {"t", format_rational(s.t)}, {"intervals", ivs}};
}

Interval interval_from_json(const json& j, const std::string& at) {
  Rational lo = rational_at(member(j, "lo", at), at + "/lo");
  Rational hi = rational_at(member(j, "hi", at), at + "/hi");
  if (hi < lo) schema(at, "interval with lo > hi");
  return {lo, hi};
}

BPoly poly_from_json(const json& j, const std::string& at) {
  if (j.is_string()) {
    try {
      return parse_poly(j.get<std::string>());
    } catch (const Error& e) {
      schema(at, e.what());
    }
  }
  const json& terms = array_at(member(j, "terms", at), at + "/terms");
  BPoly f;
  for (size_t k = 0; k < terms.size(); ++k) {
    const std::string p = at + "/terms/" + std::to_string(k);
    int i = int_at(member(terms[k], "i", p), p + "/i");
    int jj = int_at(member(terms[k], "j", p), p + "/j");
    if (i < 0 || jj < 0) schema(p, "negative exponent");
    f = f + BPoly::monomial(rational_at(member(terms[k], "c", p), p + "/c"), i, jj);
  }
  return f;
}

DomainSpec domain_from_json(const json& j) {
  check_format(j);
  DomainSpec d;
  const json& curves = array_at(member(j, "curves", ""), "/curves");
  for (size_t k = 0; k < curves.size(); ++k) {
    const std::string p = "/curves/" + std::to_string(k);
    d.curves.push_back({string_at(member(curves[k], "id", p), p + "/id"), poly_from_json(member(curves[k], "f", p), p + "/f")});
  }
  const json& bp = array_at(member(j, "basepoint", ""), "/basepoint");
  if (bp.size() != 2) schema("/basepoint", "expected two coordinates");
  d.bx = rational_at(bp[0], "/basepoint/0");
  d.by = rational_at(bp[1], "/basepoint/1");
  const json& box = member(j, "box", "");
  d.box.xmin = rational_at(member(box, "xmin", "/box"), "/box/xmin");
  d.box.xmax = rational_at(member(box, "xmax", "/box"), "/box/xmax");
  d.box.ymin = rational_at(member(box, "ymin", "/box"), "/box/ymin");
  d.box.ymax = rational_at(member(box, "ymax", "/box"), "/box/ymax");
  if (!(d.box.xmin < d.box.xmax) || !(d.box.ymin < d.box.ymax)) schema("/box", "empty box");
  return d;
}

VDigraph graph_from_json(const json& j) {
  check_format(j);
  VDigraph g;
  const json& vs = array_at(member(j, "vertices", ""), "/vertices");
  bool have_ranks = true;
  for (size_t k = 0; k < vs.size(); ++k) {
    const std::string p = "/vertices/" + std::to_string(k);
    std::string id = string_at(member(vs[k], "id", p), p + "/id");
    if (g.find(id) >= 0) schema(p + "/id", "duplicate vertex id '" + id + "'");
    const json& V = member(vs[k], "V", p);
    Interval value = V.is_object() ? interval_from_json(V, p + "/V") : Interval(rational_at(V, p + "/V"));
    int rank = 0;
    if (vs[k].contains("rank")) rank = int_at(vs[k]["rank"], p + "/rank");
    else have_ranks = false;
    g.add_vertex(id, value, rank, vs[k].value("provenance", json()));
  }
  const json& es = array_at(member(j, "edges", ""), "/edges");
  for (size_t k = 0; k < es.size(); ++k) {
    const std::string p = "/edges/" + std::to_string(k);
    std::string id = es[k].contains("id") ? string_at(es[k]["id"], p + "/id") : "e" + std::to_string(k);
    int s = g.find(string_at(member(es[k], "src", p), p + "/src"));
    int t = g.find(string_at(member(es[k], "dst", p), p + "/dst"));
    if (s < 0) schema(p + "/src", "unknown vertex");
    if (t < 0) schema(p + "/dst", "unknown vertex");
    g.add_edge(id, s, t, es[k].value("provenance", json()));
  }
  if (!have_ranks) {
    try {
      g.ranks_from_values();
    } catch (const Error& e) {
      schema("/vertices", e.what());
    }
  }
  return g;
}

EmbeddedGraph embedded_from_json(const json& j) {
  check_format(j);
  EmbeddedGraph g;
  const json& vs = array_at(member(j, "vertices", ""), "/vertices");
  for (size_t k = 0; k < vs.size(); ++k) {
    const std::string p = "/vertices/" + std::to_string(k);
    EVertex v;
    v.id = string_at(member(vs[k], "id", p), p + "/id");
    if (g.find(v.id) >= 0) schema(p + "/id", "duplicate vertex id '" + v.id + "'");
    v.x = rational_at(member(vs[k], "x", p), p + "/x");
    v.y = rational_at(member(vs[k], "y", p), p + "/y");
    g.vertices.push_back(v);
  }
  const json& es = array_at(member(j, "edges", ""), "/edges");
  for (size_t k = 0; k < es.size(); ++k) {
    const std::string p = "/edges/" + std::to_string(k);
    EEdge e;
    e.id = es[k].contains("id") ? string_at(es[k]["id"], p + "/id") : "e" + std::to_string(k);
    e.src = g.find(string_at(member(es[k], "src", p), p + "/src"));
    e.dst = g.find(string_at(member(es[k], "dst", p), p + "/dst"));
    if (e.src < 0) schema(p + "/src", "unknown vertex");
    if (e.dst < 0) schema(p + "/dst", "unknown vertex");
    if (es[k].contains("via")) {
      const json& via = array_at(es[k]["via"], p + "/via");
      for (size_t q = 0; q < via.size(); ++q) {
        const std::string pq = p + "/via/" + std::to_string(q);
        if (!via[q].is_array() || via[q].size() != 2) schema(pq, "expected [x, y]");
        e.via.emplace_back(rational_at(via[q][0], pq + "/0"), rational_at(via[q][1], pq + "/1"));
      }
    }
    g.edges.push_back(std::move(e));
  }
  return g;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw Error("parse", path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write " + path);
  out << text;
}

}  // namespace prkit

#pragma once

#include <json.hpp>
#include <string>

#include "prkit/domain.hpp"
#include "prkit/sweep.hpp"
#include "prkit/vdigraph.hpp"

namespace prkit {

using json = nlohmann::json;

inline constexpr const char* kFormat = "prkit/1";

/// Parses "1 - x^2 - 1/4*y^2" style text: rational literals, x, y, integer
/// powers, + - * and parentheses. Division is only allowed by a constant.
BPoly parse_poly(const std::string& text);

json interval_to_json(const Interval& iv);
json poly_to_json(const BPoly& f);
json domain_to_json(const DomainSpec& d);
json graph_to_json(const VDigraph& g);
json embedded_to_json(const EmbeddedGraph& g);
json violations_to_json(const std::vector<Violation>& vs);
json fset_to_json(const FSet& f);
json slice_to_json(const SliceProfile& s);
json algebraic_to_json(AlgebraicReal a, int bits = 64);

// Readers throw Error("schema", "<json pointer>: <problem>").
Interval interval_from_json(const json& j, const std::string& at = "");
/// Accepts {"terms": [...]} or a string in parse_poly syntax.
BPoly poly_from_json(const json& j, const std::string& at = "");
DomainSpec domain_from_json(const json& j);
VDigraph graph_from_json(const json& j);
EmbeddedGraph embedded_from_json(const json& j);

/// Reads and parses a JSON file; Error("io") or Error("parse") on failure.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace prkit

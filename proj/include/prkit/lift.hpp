#pragma once

#include <map>
#include <string>
#include <vector>

#include "prkit/domain.hpp"
#include "prkit/io.hpp"

namespace prkit {

/// Labels for the curves (assignment) and the number of extra squared
/// variables minus one per label (multiplicity, m0 >= 0).
struct LiftSpec {
  std::map<std::string, std::string> assignment;  // curve id -> label
  std::map<std::string, int> multiplicity;        // label -> m0
};

/// Every curve labelled, every label used, m0 >= 0, and curves that cross
/// on the closure carry distinct labels.
std::vector<Violation> validate_partition(const DomainSpec& spec, const LiftSpec& lift);

/// One equation prod_{j in label} f_j(x1, x2) - sum_k y_{label,k}^2 = 0.
struct LiftEquation {
  std::string label;
  std::vector<std::string> curves;
  BPoly base;  // the product, in (x1, x2) = (x, y)
  std::vector<std::string> yvars;
};

struct LiftDocument {
  std::vector<LiftEquation> equations;  // sorted by label
  std::vector<std::string> variables;
  int ambient_dimension = 2;
};

/// Throws Error("invalid-partition") when validate_partition reports anything.
LiftDocument emit_lift(const DomainSpec& spec, const LiftSpec& lift);

std::string equation_text(const LiftEquation& eq);
json lift_to_json(const LiftDocument& doc);
LiftSpec lift_from_json(const json& j);
/// Each curve gets its own label with m0 = 0.
LiftSpec default_lift(const DomainSpec& spec);

}  // namespace prkit

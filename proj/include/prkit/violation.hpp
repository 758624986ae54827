#pragma once

#include <string>
#include <vector>

#include "prkit/rational.hpp"

namespace prkit {

struct WitnessPoint {
  Interval x, y;
};

/// One failed check, with enough data to locate it.
struct Violation {
  std::string tag;
  std::string message;
  std::vector<std::string> subjects;  // curve, vertex or edge ids
  std::vector<WitnessPoint> points;
};

}  // namespace prkit

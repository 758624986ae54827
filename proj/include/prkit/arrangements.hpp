#pragma once

#include <vector>

#include "prkit/domain.hpp"

namespace prkit {

/// A raster of the given resolution can only see features a few cells wide:
/// critical values must be separated by `cells` cells, and at slab midpoints
/// member intervals and the gaps next to them must be that wide too.
bool raster_resolvable(const DomainSpec& d, int resolution, int cells = 6);

/// Validated arrangements of 2 to 4 axis-aligned conics in [-4, 4]^2 that a
/// raster of the given resolution resolves. Deterministic in the seed.
std::vector<DomainSpec> random_conic_arrangements(int count, unsigned seed, int resolution);

}  // namespace prkit

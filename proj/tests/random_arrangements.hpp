#pragma once

#include <prkit/arrangements.hpp>

namespace arrangements {

inline std::vector<prkit::DomainSpec> random_conics(int count, unsigned seed, int resolution) {
  return prkit::random_conic_arrangements(count, seed, resolution);
}

}  // namespace arrangements

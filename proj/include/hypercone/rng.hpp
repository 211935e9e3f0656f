#pragma once

#include <cstdint>
#include <vector>

#include "hypercone/rational.hpp"

namespace hypercone {

// Deterministic counter-based stream: the state for sample index i depends
// only on (seed, i), so parallel and serial runs see identical draws.
struct SplitMix64 {
  uint64_t state;
  uint64_t next();
  double next_unit();  // [0, 1)
};

SplitMix64 sample_stream(uint64_t seed, uint64_t index);

// Ratio of uniform integers: numerator in [-2^16, 2^16], denominator in [1, 2^16].
Rational random_ratio(SplitMix64& rng);

std::vector<Rational> random_direction(SplitMix64& rng, int n);

}  // namespace hypercone

#pragma once

#include <cstdint>

namespace anosov {

// Stateless splitmix-style counter hash: draw k for a given seed is a pure
// function of (seed, k), so disjoint index ranges give independent streams.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index);

// Uniform double in [0,1) from the top 53 bits of counter_hash.
double counter_uniform(std::uint64_t seed, std::uint64_t index);

}  // namespace anosov

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ctd {

// Deterministic RNG helpers. Only raw mt19937_64 output is consumed, so sampled
// sequences do not depend on the standard library's distribution implementations.

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view bytes);

// Independent stream per (seed, key): adding or removing keys never perturbs others.
std::mt19937_64 keyed_engine(std::uint64_t seed, std::string_view key);

// Uniform integer in [0, bound) by rejection; bound must be > 0.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound);

// Uniform double in [0, 1) from the top 53 bits.
double uniform_unit(std::mt19937_64& engine);

}  // namespace ctd

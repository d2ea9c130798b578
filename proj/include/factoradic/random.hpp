#pragma once

#include <cstdint>
#include <random>

namespace factoradic {

// std::uniform_int_distribution differs between standard libraries; this
// keeps seeded runs reproducible everywhere.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

}  // namespace factoradic

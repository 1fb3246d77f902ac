#pragma once

namespace lp {

inline constexpr const char* kVersion = "0.1.0";

// Default RNG seed for every seeded operation (searches, samplers, CLI).
inline constexpr unsigned long long kDefaultSeed = 12345ULL;

} // namespace lp

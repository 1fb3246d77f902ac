#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "liepoisson/linalg.hpp"
#include "liepoisson/version.hpp"

namespace lp {

/// Seeded deterministic generator. Doubles are mapped from raw 64-bit draws
/// directly so a given seed yields the same stream on every run.
class Rng {
public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : gen_(seed) {}

  double uniform01() {
    // 53 uniform mantissa bits in [0,1).
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    // Marsaglia polar method, deterministic given the stream.
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  Vec cube_point(int dim, double half_width = 2.0) {
    Vec x(static_cast<std::size_t>(dim));
    for (auto& v : x) v = uniform(-half_width, half_width);
    return x;
  }

  Vec unit_vector(int dim) {
    Vec x(static_cast<std::size_t>(dim));
    double n = 0.0;
    do {
      for (auto& v : x) v = normal();
      n = norm(x);
    } while (n < 1e-8);
    return (1.0 / n) * x;
  }

private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace lp

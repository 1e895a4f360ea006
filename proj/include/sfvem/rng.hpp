#pragma once

#include <cstdint>
#include <random>

namespace sfvem {

// Reproducible uniform stream: std::mt19937_64 seeded with the given value,
// doubles formed from the top 53 bits of each draw. Both the engine and the
// conversion are fully specified, so meshes are bit-identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sfvem

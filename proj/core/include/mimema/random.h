#ifndef MIMEMA_RANDOM_H_
#define MIMEMA_RANDOM_H_

#include <cstddef>
#include <cstdint>

namespace mimema {

// SplitMix64. Chosen over <random> engines plus distributions because the
// output must be identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent stream for item `index` of a run seeded with `seed`.
  static Rng ForItem(std::uint64_t seed, std::uint64_t index) {
    Rng mixer(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    return Rng(mixer.Next());
  }

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n); n must be positive.
  std::size_t Below(std::size_t n) {
    return static_cast<std::size_t>(Uniform() * static_cast<double>(n));
  }

 private:
  std::uint64_t state_;
};

}  // namespace mimema

#endif  // MIMEMA_RANDOM_H_

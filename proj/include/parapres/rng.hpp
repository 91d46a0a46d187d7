// Deterministic PRNG (splitmix64-seeded xoshiro256**).
//
// std::mt19937 with the standard distributions is implementation-defined, so
// reports seeded through <random> would not reproduce across toolchains. This
// generator is fully pinned. fork(k) derives an independent stream from the
// original seed, which is what makes sharded batch runs order-independent.

#pragma once

#include <cstdint>

namespace parapres {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed0_(seed) {
    std::uint64_t x = seed;
    for (auto& limb : s_) limb = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi], inclusive.
  long long next_int(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next_u64() % span);
  }

  bool next_bool() { return (next_u64() & 1) != 0; }

  // Independent stream derived from the original seed, not the current state.
  Rng fork(std::uint64_t stream) const {
    std::uint64_t x = seed0_ ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    return Rng(splitmix64(x));
  }

  std::uint64_t seed() const { return seed0_; }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t s_[4];
  std::uint64_t seed0_;
};

}  // namespace parapres

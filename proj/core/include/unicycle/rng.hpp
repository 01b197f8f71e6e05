#pragma once

#include <cstdint>
#include <random>

namespace unicycle {

// splitmix64 step; used for seed derivation only.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives the seed of per-sample stream `index` from a master seed. Two
// mixing rounds so that nearby (master, index) pairs land far apart.
inline uint64_t derive_seed(uint64_t master_seed, uint64_t index) {
  uint64_t s = master_seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  uint64_t a = splitmix64(s);
  return splitmix64(s) ^ a;
}

// Deterministic random stream. Wraps the (fully specified) mt19937_64
// engine; bounded draws use rejection sampling rather than
// std::uniform_int_distribution, whose output is implementation defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, bound). bound > 0.
  uint64_t below(uint64_t bound) {
    // Reject draws from the incomplete top bucket: 2^64 mod bound values.
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = gen_();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform integer in [lo, hi] inclusive.
  uint64_t between(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Fisher-Yates shuffle of [first, last).
  template <typename It>
  void shuffle(It first, It last) {
    auto n = static_cast<uint64_t>(last - first);
    for (uint64_t i = n; i > 1; --i) {
      uint64_t j = below(i);
      std::swap(first[i - 1], first[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace unicycle

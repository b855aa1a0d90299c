#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>

namespace eonsim {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stable seed derivation for (population, sample, stream) style hierarchies.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  uint64_t h = splitmix64(base ^ 0x6A09E667F3BCC909ull);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  return h;
}

// mt19937_64 with distributions implemented here rather than via <random>
// adapters: the engine's output is pinned by the standard, the adapters'
// is not, and campaign output must be reproducible byte for byte.
class Rng {
public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // [0, bound), unbiased by rejection of the final partial block.
  uint64_t below(uint64_t bound) {
    assert(bound > 0);
    uint64_t v, r;
    do {
      v = next();
      r = v % bound;
    } while (v - r > uint64_t{0} - bound);
    return r;
  }

  // [lo, hi] inclusive.
  uint64_t uniform_int(uint64_t lo, uint64_t hi) {
    assert(lo <= hi);
    return lo + below(hi - lo + 1);
  }

  double exponential(double mean) {
    // uniform() < 1 always, so the argument to log1p stays in (-1, 0].
    return -mean * std::log1p(-uniform());
  }

  // Knuth multiplication method; exact and fast enough for small means.
  uint32_t poisson(double mean) {
    const double limit = std::exp(-mean);
    uint32_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

private:
  std::mt19937_64 eng_;
};

}  // namespace eonsim

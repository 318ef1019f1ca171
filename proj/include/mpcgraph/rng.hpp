#pragma once

#include <cstdint>

// Seedable, platform-independent randomness. Everything in this repo that
// needs random bits goes through one of the two primitives below so that a
// (seed, inputs) pair reproduces bit-identically across runs and machines:
//
//  * SplitMix64       -- a sequential stream, used by generators.
//  * counter_hash     -- counter-mode draws keyed by (seed, a, b), used
//                        wherever a value must be addressable out of order
//                        (per-vertex thresholds, per-phase partitions).

namespace mpcgraph {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 bits of precision.
  double next_u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n). Modulo bias is < n / 2^64, irrelevant at our scales.
  uint64_t next_below(uint64_t n) { return n == 0 ? 0 : next() % n; }

 private:
  uint64_t state_;
};

// Stateless draw addressed by (seed, a, b). Asymmetric in a and b.
inline uint64_t counter_hash(uint64_t seed, uint64_t a, uint64_t b) {
  uint64_t x = splitmix64(seed);
  x = splitmix64(x ^ (a * 0xff51afd7ed558ccdULL));
  x = splitmix64(x ^ (b * 0xc4ceb9fe1a85ec53ULL));
  return x;
}

inline double u01_from_bits(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace mpcgraph

#pragma once

#include <cstdint>

#include "syndsl/bitvec.hpp"

namespace syndsl {

// splitmix64: x += 0x9e3779b97f4a7c15; z = x;
// z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
// z = (z ^ (z >> 27)) * 0x94d049bb133111eb; return z ^ (z >> 31).
// Fixed so that seeded runs reproduce bit-exactly on every host.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound); bound > 0. Modulo bias is irrelevant for the
  // power-of-two bounds used here.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  BitVector bits(unsigned width) {
    u128 v = next();
    if (width > 64) v = (v << 64) | next();
    return BitVector(width, v & bv_modulus_mask(width));
  }

 private:
  std::uint64_t state_;
};

}  // namespace syndsl

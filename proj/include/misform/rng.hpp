#pragma once

#include <cstdint>

namespace misform {

// Deterministic, platform-independent generator (splitmix64). The standard
// distributions are implementation-defined, so anything that must reproduce
// bit-for-bit across toolchains draws from this instead.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) without modulo bias.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~0ULL - ~0ULL % n;
    std::uint64_t v;
    do { v = next(); } while (v >= limit);
    return v % n;
  }

  // Uniform in [0, 1).
  double unit() { return (next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
  return g.next();
}

}  // namespace misform

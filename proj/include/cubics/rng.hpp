#pragma once

#include <cstdint>
#include <limits>

namespace cubics {

// Counter-based generator: draw i of a stream is splitmix64(seed + i * gamma),
// so any draw can be recomputed from (seed, i) alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) : seed_(seed), counter_(counter) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() { return mix(seed_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // Uniform in [0, n), by rejection of the biased tail.
  std::uint64_t uniform(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do v = next();
    while (v >= limit);
    return v % n;
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace cubics

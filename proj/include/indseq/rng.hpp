#pragma once

#include <cstdint>

namespace indseq {

// splitmix64: tiny deterministic generator with a cheap counter-based split.
// Used instead of std::uniform_int_distribution so that seeded runs are
// byte-identical across platforms and worker counts.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased uniform draw from [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // Stream for the i-th work item of a seeded run; independent of how
  // items are scheduled across workers.
  static SplitMix64 for_item(std::uint64_t master_seed, std::uint64_t index) {
    SplitMix64 mix(master_seed ^ (0xa0761d6478bd642fULL * (index + 1)));
    mix.next();
    return mix;
  }

 private:
  std::uint64_t state_;
};

}  // namespace indseq

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace farl {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Combine a seed with a tag into the seed of an independent stream
// (training vs. evaluation, per-run sub-seeds, tuple generation).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed * 0x9e3779b97f4a7c15ull + tag);
}

// Seeded random stream. The integer/real helpers are implemented here
// instead of via <random> distributions so that identical seeds give
// identical streams on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0,1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0,n), n >= 1. Rejection sampling, no modulo bias.
  int below(int n) {
    const auto un = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0 - un) % un;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return static_cast<int>(x % un);
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))];
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace farl

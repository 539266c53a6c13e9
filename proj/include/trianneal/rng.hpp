#pragma once

#include <cstdint>
#include <array>
#include <bit>

namespace trianneal {

// splitmix64 finalizer; used to derive decorrelated per-chain seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t chain_seed(std::uint64_t base_seed, std::uint64_t chain) {
  return splitmix64(splitmix64(base_seed) ^ splitmix64(chain + 0x632be59bd9b4e019ULL));
}

// xoshiro256** (Blackman & Vigna) seeded through splitmix64, with
// distribution helpers whose output is fully determined by the engine (std
// distributions are implementation-defined). mt19937_64 was ~6x slower here.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) {
      word = splitmix64(x);
      x += 0x9e3779b97f4a7c15ULL;
    }
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()() {
    const std::uint64_t out = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return out;
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, n), n > 0 (Lemire).
  std::uint32_t below(std::uint32_t n) {
    std::uint64_t m = ((*this)() >> 32) * n;
    auto low = static_cast<std::uint32_t>(m);
    if (low < n) {
      const std::uint32_t threshold = static_cast<std::uint32_t>(-n) % n;
      while (low < threshold) {
        m = ((*this)() >> 32) * n;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  bool coin() { return ((*this)() >> 63) != 0; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace trianneal

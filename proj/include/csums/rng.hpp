// rng.hpp
//
// Seeded randomness. A master 64-bit seed is split into independent
// substreams with splitmix64, so trial t of an experiment always sees the
// same generator regardless of which worker runs it. The engine is
// std::mt19937_64; the bounded/real draws below are written out by hand
// because the std:: distributions are not portable across standard
// libraries.

#pragma once

#include <cstdint>
#include <random>

namespace csums {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of substream `index` under `master`.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index ^ 0x6a09e667f3bcc908ULL));
}

inline Engine make_engine(std::uint64_t seed) { return Engine(splitmix64(seed)); }

/// Unbiased integer in [0, bound) (Lemire's multiply-and-reject). bound > 0.
template <class Gen>
std::uint64_t uniform_below(Gen& gen, std::uint64_t bound) {
  using u128 = unsigned __int128;
  std::uint64_t x = gen();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = gen();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
template <class Gen>
double uniform01(Gen& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace csums

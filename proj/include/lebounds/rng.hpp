#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lebounds {

/// Fisher-Yates shuffle driven by raw mt19937_64 output. The standard fixes
/// the engine's sequence, so shuffles are reproducible across platforms
/// (std::shuffle is not; its distribution mapping is implementation-defined).
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

/// SplitMix64 step, used to derive independent per-sample seeds.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace lebounds

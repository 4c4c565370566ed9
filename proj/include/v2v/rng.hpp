#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace v2v {

// One master seed derives independent named substreams so that adding or
// reordering a consumer never perturbs the draws seen by the others.
//
// Split function: seed(name) = splitmix64(master XOR fnv1a64(name)).
// The streams used by the engine are "mobility", "fading", "arrivals"
// and "zone-seed-pick".

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master, std::string_view name) {
  return splitmix64(master ^ fnv1a64(name));
}

using Rng = std::mt19937_64;

inline Rng make_substream(std::uint64_t master, std::string_view name) {
  return Rng(substream_seed(master, name));
}

}  // namespace v2v

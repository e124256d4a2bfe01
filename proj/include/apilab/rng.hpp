#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace apilab {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a child seed from a master seed and a path of counters
/// (e.g. point id, frame index, stream tag). Independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(master);
  for (auto p : path) s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

// Stream tags used when one frame needs several independent generators.
enum class Stream : std::uint64_t { source = 1, side_info = 2, channel_x = 3, channel_y = 4, fade_x = 5, fade_y = 6 };

inline std::uint64_t derive_seed(std::uint64_t frame_seed, Stream s) {
  return derive_seed(frame_seed, {static_cast<std::uint64_t>(s)});
}

}  // namespace apilab

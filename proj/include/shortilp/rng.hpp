#pragma once

#include <cstdint>
#include <string>

namespace shortilp {

// splitmix64: tiny, portable, well-mixed 64-bit generator. Every consumer of
// randomness in this project derives a named stream from a master seed so
// field sampling order never shifts between versions or platforms.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi] via 128-bit multiply-shift; exact and portable for
  // the small ranges used here (range width far below 2^63).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t width = static_cast<std::uint64_t>(hi - lo) + 1;
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(next()) * width;
    return lo + static_cast<std::int64_t>(prod >> 64);
  }
};

inline std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

// Derives an independent, named stream from a master seed. The tag keeps
// per-field sampling stable even when fields are added or reordered.
inline SplitMix64 seeded_stream(std::uint64_t master_seed,
                                const std::string& tag) {
  SplitMix64 mix(master_seed ^ fnv1a64(tag));
  // One warm-up step decorrelates nearby seeds.
  mix.next();
  return mix;
}

}  // namespace shortilp

#pragma once

#include <cstdint>
#include <random>

namespace amalgam {

// Bounded sampling on top of the (standardized) mt19937_64 engine. The
// standard distributions are implementation-defined, so audits roll their
// own to stay byte-identical across toolchains.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform draw from [lo, hi] by rejection.
inline long long uniform_int(std::mt19937_64& rng, long long lo, long long hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<long long>(draw % span);
}

/// Uniform draw from [lo, hi] excluding zero.
inline long long uniform_nonzero(std::mt19937_64& rng, long long lo, long long hi) {
  long long v;
  do {
    v = uniform_int(rng, lo, hi);
  } while (v == 0);
  return v;
}

inline bool coin(std::mt19937_64& rng) { return (rng() & 1) != 0; }

/// Per-trial engine: decoupled from trial order, so any partition of the
/// trial range reproduces the same stream.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(trial)));
}

}  // namespace amalgam

#pragma once

#include <cstdint>
#include <random>

namespace rct {

// splitmix64 step; used to derive well-separated stream seeds from one
// master seed so parallel chains / restarts stay reproducible.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic RNG for stream `index` of master `seed`. Stream 0 is not
// the raw seed: everything goes through the mixer so nearby seeds decorrelate.
inline std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t index = 0) {
  std::uint64_t s = seed + 0x632be59bd9b4e019ULL * (index + 1);
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace rct

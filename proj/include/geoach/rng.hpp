// rng.hpp: seeded random streams for reproducible trials
#pragma once

#include <cstdint>
#include <random>

namespace geoach {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Order-independent per-trial seed: the same (base, trial, c_index) always
// maps to the same value regardless of scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t trial,
                                    std::uint64_t c_index = 0) {
  return splitmix64(splitmix64(splitmix64(base) ^ trial) ^ (c_index * 0xD1B54A32D192ED03ULL));
}

// A (seed, stream) pair names one reproducible sequence of draws.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), engine_(splitmix64(seed ^ splitmix64(stream + 1))) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next() { return engine_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace geoach

#pragma once

#include <cstdint>
#include <random>

namespace treecode {

// splitmix64 finalizer; used to condition seeds and split streams.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed of stream `stream` under a master seed. Distinct streams give
// independent generators, so trials can be batched across workers without
// changing any output.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed + stream * 0xA0761D6478BD642Full;
  return splitmix64_next(state);
}

// Seeded generator with a pinned algorithm (std::mt19937_64) and a pinned
// uint64 -> double mapping, so sequences are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0,1): top 53 bits of the raw output.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace treecode

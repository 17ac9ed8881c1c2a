#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace iching {

// Deterministic randomness shared by every generator in the project.
//
// Generator: xoshiro256** (Blackman & Vigna). State words are filled from a
// SplitMix64 sequence started at the stream seed.
//
// Streams: a session seed is split into independent sub-streams with
//   stream_seed = mix64(seed + 0x9E3779B97F4A7C15 * (stream_index + 1))
// where mix64 is the SplitMix64 finalizer. Stream indices used by the
// ritual are laid out by `stream_id` below.
//
// Derived draws are defined on the raw 64-bit output so that other
// implementations can reproduce them exactly:
//   uniform()      = (next() >> 11) * 2^-53            in [0, 1)
//   coin()         = top bit of next()                 (1 = heads)
//   below(n)       = floor(uniform() * n)
//   weighted(w)    = first i with uniform() * sum(w) < w[0] + ... + w[i]

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_index) {
  return mix64(seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1));
}

enum class StreamPurpose : std::uint64_t {
  Toss = 0,       // + toss index 0..5
  Layer = 16,     // + line index 1..6
  Ambient = 32,
  Cage = 48,
};

// Reset increments the epoch so a reset session never reuses a stream.
constexpr std::uint64_t stream_id(std::uint64_t epoch, StreamPurpose purpose,
                                  std::uint64_t offset = 0) {
  return (epoch << 8) | (static_cast<std::uint64_t>(purpose) + offset);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng for_stream(std::uint64_t seed, std::uint64_t stream_index) {
    return Rng(derive_stream_seed(seed, stream_index));
  }

  std::uint64_t next();
  double uniform();
  bool coin();
  bool bernoulli(double p) { return uniform() < p; }
  std::size_t below(std::size_t n);
  std::size_t weighted(std::span<const double> weights);

 private:
  std::array<std::uint64_t, 4> s_{};
};

// Fresh 64-bit seed from the OS entropy source.
std::uint64_t entropy_seed();

}  // namespace iching

#pragma once

// Seeded random streams.
//
// Generator: xoshiro256** (Blackman & Vigna), state filled by SplitMix64.
// A stream is identified by (seed, label); the SplitMix64 seed is
// seed XOR FNV-1a-64(label), so streams with different labels are
// independent and no stream's draws depend on how many draws another
// stream made. All derived distributions below are written out here
// rather than taken from <random> so sequences are identical across
// standard libraries and platforms.

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace rwsink {

constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  // Unbiased integer in [0, bound); bound must be > 0. Lemire's multiply-shift
  // with rejection.
  std::uint64_t uniform_index(std::uint64_t bound) noexcept {
    std::uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

inline RngStream rng_stream(std::uint64_t seed, std::string_view label) noexcept {
  return RngStream(seed ^ fnv1a64(label));
}

// Labels used by the engine; one stream per purpose.
namespace stream {
inline constexpr std::string_view kPlacement = "placement";
inline constexpr std::string_view kPhases = "phases";
inline constexpr std::string_view kWalks = "walks";
inline constexpr std::string_view kSinkPlan = "sink-plan";
}  // namespace stream

}  // namespace rwsink

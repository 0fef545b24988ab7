#pragma once

#include <cmath>
#include <cstdint>

namespace calib::rng {

// All randomness in this project comes from SplitMix64 counter streams: the
// i-th draw of a stream is a pure function of (seed, i). That keeps every
// result bit-stable across runs and platforms and lets independent trials
// use disjoint streams without shared state.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// i-th value of the stream identified by `seed`.
constexpr std::uint64_t stream_at(std::uint64_t seed, std::uint64_t i) noexcept {
  return mix64(seed + (i + 1) * kGolden);
}

// Seed of child stream `slot`. Domain-separated from stream_at so a derived
// seed never equals a draw from the parent stream.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t slot) noexcept {
  return mix64((seed ^ 0xd6e8feb86659fd93ULL) + (slot + 1) * kGolden);
}

// Sequential view over one counter stream.
class Stream {
public:
  explicit Stream(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next() noexcept { return stream_at(seed_, pos_++); }

  // uniform in [0,1) with 53 random bits
  double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t seed_;
  std::uint64_t pos_ = 0;
};

// Exclusive integer threshold T such that, for a 64-bit uniform u,
//   u < T  <=>  u/2^64 < p   (exact real-number comparison).
// ldexp(p, 64) is exact for p in [0,1] (scaling by a power of two), so the
// ceil below is the true ceiling of p*2^64. p >= 1 needs the extra check in
// bernoulli() because 2^64 is not representable as a threshold.
inline std::uint64_t bernoulli_threshold(double p) noexcept {
  if (p >= 1.0) return ~0ULL;
  if (p <= 0.0) return 0;
  return static_cast<std::uint64_t>(std::ceil(std::ldexp(p, 64)));
}

// Bernoulli draw from one 64-bit uniform: success iff u/2^64 < p, evaluated
// exactly. p = 0 never succeeds, p = 1 always does.
inline bool bernoulli(std::uint64_t u, double p) noexcept {
  return u < bernoulli_threshold(p) || p >= 1.0;
}

// Map a 64-bit uniform onto {0, ..., n-1} (multiply-shift).
inline std::uint64_t uniform_index(std::uint64_t u, std::uint64_t n) noexcept {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(u) * static_cast<unsigned __int128>(n)) >> 64);
}

}  // namespace calib::rng

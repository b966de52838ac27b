#pragma once

#include <cstdint>
#include <random>

namespace upcross {

// Seeding contract, version 1. All simulation output is a pure function of
// (master seed, stream index) under this contract:
//
//   * the generator is std::mt19937_64, whose output sequence is fully
//     specified by the standard, so streams are identical across platforms;
//   * uniforms take the top 53 bits of one generator word, giving values on
//     [0, 1) with spacing 2^-53, independent of any library distribution;
//   * substream seeds come from a SplitMix64-style finalizer over
//     master_seed + GOLDEN * (stream_index + 1).
//
// Changing any of these rules changes every simulated sample and bumps the
// contract version.
inline constexpr int kSeedContractVersion = 1;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
  constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  return mix64(master_seed + kGolden * (stream_index + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace upcross

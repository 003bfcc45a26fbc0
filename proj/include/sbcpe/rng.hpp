#pragma once

#include <cstdint>

namespace sbcpe {

// Deterministic randomness for the whole library.
//
// Generator: splitmix64 (Steele, Lea & Flood's SplittableRandom step with
// Stafford's mix13 finalizer). It is fully defined by 64-bit integer
// arithmetic, so streams are bit-identical across platforms and compilers.
//
// Stream derivation rule: every consumer owns a substream whose seed is
//   derive_stream(parent_seed, purpose)            or
//   derive_stream(parent_seed, purpose, index)
// where `purpose` is one of the labels below and `index` picks the agent /
// replica / sample within the purpose. Substreams never share state.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t purpose) {
  return mix64(seed + kGolden * (purpose + 1));
}

constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t purpose,
                                      std::uint64_t index) {
  return mix64(derive_stream(seed, purpose) + kGolden * (index + 1));
}

// Purpose labels. Values are part of the reproducibility contract: changing
// them changes every derived stream.
namespace stream {
inline constexpr std::uint64_t kUtilities = 1;     // random_game tensor draws
inline constexpr std::uint64_t kAction = 2;        // per-agent action draws
inline constexpr std::uint64_t kMessage = 3;       // per-agent message Bernoullis
inline constexpr std::uint64_t kReplica = 4;       // per-replica run seeds
inline constexpr std::uint64_t kGameSample = 5;    // per-sample game seeds (epsmap)
inline constexpr std::uint64_t kEpsilonDraw = 6;   // epsilon sampling in verify suites
inline constexpr std::uint64_t kPerturbation = 7;  // theta-hat perturbations
}  // namespace stream

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Multiply-shift: consumes exactly one 64-bit
  // draw regardless of n (bias is O(n / 2^64), irrelevant at desk scale but
  // the fixed consumption is what keeps traces stable).
  int next_below(int n) {
    return static_cast<int>(
        (static_cast<unsigned __int128>(next_u64()) * static_cast<std::uint64_t>(n)) >> 64);
  }

  // One draw consumed no matter the outcome.
  bool bernoulli(double p) { return next_unit() < p; }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace sbcpe

// rng.hpp
// Deterministic 64-bit-state random number generation for reproducible
// simulations. The generator is SplitMix64 (Steele, Lea, Flood 2014): a
// single 64-bit counter advanced by the golden-gamma constant and passed
// through an avalanching finalizer. Per-trial streams are derived from
// (master_seed, trial_index) so results do not depend on execution order.

#pragma once

#include <cstdint>

namespace qgames::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer: bijective avalanche mix of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    // Uniform double in [0, 1) with 53 random bits; identical on every
    // conforming platform (no std::uniform_real_distribution, whose output
    // is implementation-defined).
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform bit in {0, 1}.
    int next_bit() { return static_cast<int>(next() >> 63); }

private:
    std::uint64_t state_;
};

// Seed of the per-trial stream: trials are independent of each other and of
// the order in which they run.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(master_seed + (trial_index + 1) * kGoldenGamma);
}

}  // namespace qgames::rng

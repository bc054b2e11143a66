#pragma once

#include <cstdint>
#include <random>

namespace promo {

/// SplitMix64 mix of the n-th stream element for a base seed. Streams derived
/// by counter are order-independent, so batches can run episodes in any order.
inline std::uint64_t splitmix64At(std::uint64_t seed, std::uint64_t n) {
    std::uint64_t z = seed + (n + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seedable generator with reproducible primitive draws. Wraps mt19937_64 and
/// maps raw 64-bit outputs to doubles directly, avoiding the
/// implementation-defined std::distribution adaptors.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace promo

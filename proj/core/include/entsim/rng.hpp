#pragma once

#include <cstdint>

namespace entsim {

// Deterministic 64-bit generator (splitmix64). Every random choice in the
// library flows through an explicitly seeded instance; there is no ambient
// RNG state, so any run is reproducible from its seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent stream for a (seed, index) pair. Monte Carlo trial i draws
    // from for_stream(seed, i), so results do not depend on evaluation order.
    static Rng for_stream(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed ^ (0x9E3779B97F4A7C15ULL + index * 0xD1B54A32D192ED03ULL));
        return Rng(mix.next_u64());
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 significant bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_unit() < p; }

    int bit() { return static_cast<int>(next_u64() >> 63); }

  private:
    std::uint64_t state_;
};

} // namespace entsim

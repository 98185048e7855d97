#pragma once

#include <cstdint>

namespace qtri {

// Counter-based generator (SplitMix64). Every random decision in a run is
// derived from one 64-bit seed, so reports are reproducible bit-for-bit
// across platforms and independent of evaluation order elsewhere.
class SplitMix64 {
  public:
    SplitMix64() = default;
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % bound;
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    std::uint64_t state() const { return state_; }

  private:
    std::uint64_t state_ = 0;
};

// Stateless mixing of a seed with counters; used where a decision must be a
// pure function of (seed, indices), e.g. per-pair edge draws and the random
// restriction relations.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 0x632be59bd9b4e019ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix64(mix64(a, b), c);
}

}  // namespace qtri

#pragma once

#include <cstdint>

namespace conc {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen because the whole recurrence
// fits in a dozen lines, is seedable from a single 64-bit value, and produces
// identical streams on every platform. All randomized constructions in this
// library consume this generator and nothing else, so a seed pins the output
// bit-for-bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 significant bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

}  // namespace conc

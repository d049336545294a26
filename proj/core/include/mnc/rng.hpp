#pragma once

#include <cstdint>
#include <random>

namespace mnc {

// Deterministic random stream.  Draw helpers are hand-rolled on the raw
// engine output so results are pinned to the engine alone, not to a standard
// library's distribution implementation.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : eng_(seed) {}

    // Independent child stream; splitting by index keeps per-draw results
    // stable under reordering of the draws.
    static SplitRng child(std::uint64_t seed, std::uint64_t index) {
        return SplitRng(mix(seed, index));
    }

    std::uint64_t bits() { return eng_(); }

    // Uniform in the open interval (0, 1).
    double unit_open() {
        return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform in [lo, hi].
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(bits() >> 11) * 0x1.0p-53);
    }

    // Uniform integer in [0, n), n >= 1, by rejection (unbiased).
    std::uint64_t index(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do { x = bits(); } while (x >= limit);
        return x % n;
    }

    // Derived seed for an indexed substream (splitmix64 finalizer).
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
};

}

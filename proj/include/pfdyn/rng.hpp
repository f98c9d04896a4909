#pragma once

#include <cstdint>

namespace pfdyn {

/// Counter-based pseudo-random stream. Every draw is a pure function of
/// (seed, stream, counter), so workers keyed by (seed, task index) produce
/// the same numbers regardless of scheduling or platform.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1))) {}

    std::uint64_t next_u64() { return mix(key_ + 0x9E3779B97F4A7C15ull * ++counter_); }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace pfdyn

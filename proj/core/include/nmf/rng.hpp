#pragma once

#include <cstdint>
#include <random>

namespace nmf {

/// Seeded generator with platform-independent derived distributions.
///
/// std::mt19937_64's raw output is fixed by the standard, but the standard
/// distributions are not, so uniform variates are built from raw bits here.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    void seed(std::uint64_t s) { engine_.seed(s); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t index(std::uint64_t n) {
        // Rejection sampling keeps the result unbiased.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Exponential(1) variate.
    double exponential();

private:
    std::mt19937_64 engine_;
};

/// Mixes two integers into a well-spread 64-bit seed (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace nmf

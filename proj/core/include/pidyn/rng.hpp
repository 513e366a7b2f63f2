#pragma once

#include <cstdint>
#include <random>

namespace pidyn {

/// Seeded random stream. Wraps mt19937_64 but implements its own bounded
/// draws so that sequences are identical across standard library
/// implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform integer in [0, n). n must be positive.
    int uniform_int(int n) {
        // rejection sampling to avoid modulo bias
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return static_cast<int>(v % bound);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Derives an independent child seed from (master, index); used to give
    /// each replicate its own stream.
    static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
        // splitmix64 finalizer over the mixed pair
        std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace pidyn

#pragma once

#include <cstdint>

namespace qkd {

/// splitmix64 finalizer; used for seed expansion and per-run seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for run #index of a sweep, derived from a base seed. Stable across
/// platforms and independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t s = base ^ (0xA0761D6478BD642FULL * (index + 1));
    return splitmix64(s);
}

/// xoshiro256** with an explicit, fully specified uniform mapping. The
/// standard library distributions are implementation-defined, which would
/// break byte-identical reports across toolchains, so all randomness in the
/// library goes through this class.
class Prng {
public:
    explicit Prng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    bool bit() { return (next_u64() >> 63) != 0; }

    /// Uniform integer in [0, n). Rejection-free modulo bias is irrelevant at
    /// the ranges used here (n <= 2^32), but we reject anyway to stay exact.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x > limit);
        return x % n;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4]{};
};

}  // namespace qkd

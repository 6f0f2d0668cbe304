// =============================================================================
// rng.hpp — Self-contained, bit-reproducible random number generation.
//
// Replication r of a run seeded with `seed` draws from an independent
// xoshiro256** stream whose 256-bit state is expanded as
//
//     base     = splitmix64(seed)                       (one splitmix step)
//     key      = base + (r + 1) * 0xD1B54A32D192ED03    (odd-constant spread)
//     state[i] = next four outputs of a splitmix64 chain started at key
//
// so replication order and thread partitioning cannot change any stream.
// Bounded draws use multiply-shift rejection, which depends only on the raw
// 64-bit outputs; results are therefore identical across compilers and
// platforms (std::uniform_int_distribution is *not* used for this reason).
// =============================================================================
#pragma once

#include <cstdint>

namespace moran {

/// splitmix64 step function (public-domain constants).
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256** generator with deterministic per-replication stream derivation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) { reseed(seed, 0); }
    Rng(std::uint64_t seed, std::uint64_t replication) { reseed(seed, replication); }

    /// Stream for replication index `replication` of a run keyed by `seed`.
    static Rng for_replication(std::uint64_t seed, std::uint64_t replication) {
        return Rng(seed, replication);
    }

    void reseed(std::uint64_t seed, std::uint64_t replication) {
        SplitMix64 sm{seed};
        const std::uint64_t base = sm.next();
        SplitMix64 expand{base + (replication + 1) * 0xD1B54A32D192ED03ULL};
        for (auto& word : state_) word = expand.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, n). Multiply-shift with rejection (unbiased).
    std::uint64_t bounded(std::uint64_t n) {
        std::uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                x = next();
                m = static_cast<__uint128_t>(x) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Fair coin from the top bit.
    bool coin() { return (next() >> 63) != 0; }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4] = {};
};

}  // namespace moran

#pragma once

#include <cstdint>

namespace gridplay {

// Deterministic, platform-independent random stream (xoshiro256++ seeded
// through splitmix64). The same (seed, stream) pair always replays the same
// draw sequence; distinct stream ids give statistically independent streams,
// so concurrent playouts each own a private stream.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : seed_(seed), stream_(stream) {
        std::uint64_t x = seed ^ (stream * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
        for (auto& word : state_) word = split_mix(x);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) noexcept {
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    bool bernoulli(double p) noexcept { return uniform() < p; }

private:
    static std::uint64_t split_mix(std::uint64_t& x) noexcept {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t v, int k) noexcept {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t state_[4];
};

// Stable 64-bit mix for deriving per-task seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
    std::uint64_t z = seed ^ (salt + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace gridplay

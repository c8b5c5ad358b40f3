#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace panelval::rng {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every stream
// is addressed by (seed, stream id); streams never share state, so simulation
// cells can be generated in any order or on any thread with identical output.

namespace detail {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<uint32_t, 4>& ctr, const std::array<uint32_t, 2>& key) {
    const uint64_t p0 = static_cast<uint64_t>(kPhiloxM0) * ctr[0];
    const uint64_t p1 = static_cast<uint64_t>(kPhiloxM1) * ctr[2];
    const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32);
    const uint32_t lo0 = static_cast<uint32_t>(p0);
    const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32);
    const uint32_t lo1 = static_cast<uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

} // namespace detail

inline std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                          std::array<uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += detail::kPhiloxW0;
            key[1] += detail::kPhiloxW1;
        }
        detail::philox_round(counter, key);
    }
    return counter;
}

// splitmix64 finalizer; used to derive uncorrelated sub-seeds per pipeline stage.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stable per-stage seed derivation: hash the domain tag (FNV-1a) into the
// master seed so e.g. the MC engine and the bootstrap never share streams.
inline uint64_t derive_seed(uint64_t seed, std::string_view domain) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (char c : domain) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return splitmix64(seed ^ h);
}

class Stream {
public:
    Stream(uint64_t seed, uint64_t stream_id)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          stream_id_(stream_id) {}

    uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    uint64_t next_u64() {
        const uint64_t lo = next_u32();
        const uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, n); bitmask rejection.
    uint64_t uniform_below(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t mask = ~uint64_t{0} >> __builtin_clzll(n - 1 | 1);
        for (;;) {
            uint64_t v = (n - 1) <= 0xFFFFFFFFull ? next_u32() : next_u64();
            v &= mask;
            if (v < n) return v;
        }
    }

    // Standard normal via Box-Muller (second deviate cached).
    double next_gaussian();

private:
    void refill() {
        std::array<uint32_t, 4> ctr{
            static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32),
            static_cast<uint32_t>(stream_id_), static_cast<uint32_t>(stream_id_ >> 32)};
        buf_ = philox4x32(ctr, key_);
        ++block_;
        pos_ = 0;
    }

    std::array<uint32_t, 2> key_;
    uint64_t stream_id_ = 0;
    uint64_t block_ = 0;
    std::array<uint32_t, 4> buf_{};
    int pos_ = 4;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

} // namespace panelval::rng

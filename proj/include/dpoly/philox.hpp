#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace dpoly {

// Philox4x32-10 counter-based generator. Every output block is a pure
// function of (key, counter), so a sampling plan that assigns disjoint
// counter coordinates to logical draws is reproducible under any thread
// schedule or worker count. Counter word layout used by the samplers:
// w[0] = block within a draw, w[1] = draw, w[2] = sample, w[3] = generation.
struct PhiloxBlock {
    std::array<std::uint32_t, 4> w{};
};

inline PhiloxBlock philox_core(std::array<std::uint32_t, 4> ctr,
                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return PhiloxBlock{ctr};
}

inline PhiloxBlock philox_block(std::uint64_t seed, std::uint32_t generation,
                                std::uint32_t sample, std::uint32_t draw,
                                std::uint32_t block) {
    return philox_core({block, draw, sample, generation},
                       {static_cast<std::uint32_t>(seed),
                        static_cast<std::uint32_t>(seed >> 32)});
}

// Two independent 64-bit words per block; half selects which.
inline std::uint64_t philox_u64(const PhiloxBlock& blk, int half) {
    const int base = half ? 2 : 0;
    return static_cast<std::uint64_t>(blk.w[base]) |
           (static_cast<std::uint64_t>(blk.w[base + 1]) << 32);
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform_from_bits(std::uint64_t u) {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

// Unbiased index in [0, n) by 128-bit multiply-shift.
inline std::uint64_t index_from_bits(std::uint64_t u, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(u) * static_cast<unsigned __int128>(n)) >> 64);
}

// Two standard normals from one block (Box-Muller; the log argument is
// mapped into (0, 1] so it never hits zero).
inline std::pair<double, double> normal_pair(const PhiloxBlock& blk) {
    const double u1 = 1.0 - uniform_from_bits(philox_u64(blk, 0));
    const double u2 = uniform_from_bits(philox_u64(blk, 1));
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 6.283185307179586476925286766559 * u2;
    return {rad * std::cos(ang), rad * std::sin(ang)};
}

}  // namespace dpoly

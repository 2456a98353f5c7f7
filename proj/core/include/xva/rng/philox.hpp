#pragma once

#include "xva/math/normal.hpp"

#include <array>
#include <cstdint>

namespace xva::rng {

// Philox4x32-10 counter-based generator (Salmon et al., Random123). Stateless:
// a (key, counter) pair maps to four 32-bit words, so draws are addressable by
// (seed, path, draw index) and independent of how paths are scheduled.
struct Philox4x32 {
    static constexpr std::uint32_t m0 = 0xD2511F53u;
    static constexpr std::uint32_t m1 = 0xCD9E8D57u;
    static constexpr std::uint32_t w0 = 0x9E3779B9u;
    static constexpr std::uint32_t w1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t(m0) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(m1) * ctr[2];
            ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
                   std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
            key[0] += w0;
            key[1] += w1;
        }
        return ctr;
    }
};

// Sequential draw stream for one Monte Carlo path, keyed by (seed, path).
// Each block yields two uint64 words; uniforms are strictly inside (0,1).
class PathRng {
  public:
    PathRng(std::uint64_t seed, std::uint64_t path) : seed_(seed), path_(path) {}

    std::uint64_t next_u64() {
        if (word_ == 0) {
            const std::array<std::uint32_t, 4> c{
                std::uint32_t(path_), std::uint32_t(path_ >> 32),
                std::uint32_t(block_), std::uint32_t(block_ >> 32)};
            const std::array<std::uint32_t, 2> k{std::uint32_t(seed_),
                                                 std::uint32_t(seed_ >> 32)};
            const auto r = Philox4x32::block(c, k);
            lo_ = (std::uint64_t(r[1]) << 32) | r[0];
            hi_ = (std::uint64_t(r[3]) << 32) | r[2];
        }
        ++n_drawn_;
        if (word_ == 0) {
            word_ = 1;
            return lo_;
        }
        word_ = 0;
        ++block_;
        return hi_;
    }

    double next_uniform() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    double next_normal() { return math::norm_quantile(next_uniform()); }

    std::uint64_t draws() const { return n_drawn_; }

  private:
    std::uint64_t seed_;
    std::uint64_t path_;
    std::uint64_t block_ = 0;
    std::uint64_t lo_ = 0, hi_ = 0;
    std::uint64_t n_drawn_ = 0;
    int word_ = 0;
};

} // namespace xva::rng

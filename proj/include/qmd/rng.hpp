#pragma once

#include <cstdint>

namespace qmd {

/// PCG32 (XSH-RR variant, O'Neill 2014). Chosen over std::mt19937 because the
/// algorithm is fully specified here: histograms and noise trajectories are
/// reproducible from the seed alone, independent of the standard library.
class Pcg32 {
  public:
    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0x14057b7ef767814fULL) {
        state_ = 0u;
        inc_ = (stream << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        const std::uint64_t bits = ((hi << 32u) | lo) >> 11u;
        return static_cast<double>(bits) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). Multiply-shift; bias is < bound/2^32 and
    /// irrelevant for the qualitative noise model this backs.
    std::uint32_t next_below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(next_u32()) * bound) >> 32u);
    }

  private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

}  // namespace qmd

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace percograph {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// 32-bit FNV-1a hash, used to turn stream labels into counter words.
std::uint32_t label_hash(std::string_view label);

/// Derives an independent 64-bit seed from (seed, label, index).
///
/// Derived seeds are the only way randomness is handed between components,
/// so every result is a pure function of the master seed regardless of the
/// order in which work is scheduled.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::uint64_t index);

/// Counter-based random stream. The key is the seed; the counter carries the
/// label hash, the 64-bit stream index and a block number, so streams with
/// distinct (label, index) never overlap.
///
/// Satisfies UniformRandomBitGenerator.
class Stream {
public:
    using result_type = std::uint64_t;

    Stream(std::uint64_t seed, std::string_view label, std::uint64_t index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next_u64(); }

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller (no cached second variate).
    double normal();
    /// Uniform integer on [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint32_t label_;
    std::uint64_t index_;
    std::uint32_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
};

/// Shorthand for Stream(seed, label, index).
inline Stream substream(std::uint64_t seed, std::string_view label, std::uint64_t index)
{
    return Stream(seed, label, index);
}

}  // namespace percograph

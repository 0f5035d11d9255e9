#include "percograph/rng.hpp"

#include <cmath>
#include <numbers>

namespace percograph {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

// Block number reserved for seed derivation; ordinary streams would need
// 2^32 - 1 blocks (16 GiB of output) to reach it.
constexpr std::uint32_t kDeriveBlock = 0xFFFFFFFFu;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

std::array<std::uint32_t, 4> make_counter(std::uint32_t block, std::uint32_t label,
                                          std::uint64_t index)
{
    return {block, label, static_cast<std::uint32_t>(index),
            static_cast<std::uint32_t>(index >> 32)};
}

std::array<std::uint32_t, 2> make_key(std::uint64_t seed)
{
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key)
{
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint32_t label_hash(std::string_view label)
{
    std::uint32_t h = 2166136261u;
    for (unsigned char c : label) {
        h ^= c;
        h *= 16777619u;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index)
{
    const auto out = philox4x32(make_counter(kDeriveBlock, label_hash(label), index),
                                make_key(seed));
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

Stream::Stream(std::uint64_t seed, std::string_view label, std::uint64_t index)
    : key_(make_key(seed)), label_(label_hash(label)), index_(index)
{
}

void Stream::refill()
{
    buffer_ = philox4x32(make_counter(block_++, label_, index_), key_);
    used_ = 0;
}

std::uint64_t Stream::next_u64()
{
    if (used_ > 2)
        refill();
    const std::uint64_t lo = buffer_[used_];
    const std::uint64_t hi = buffer_[used_ + 1];
    used_ += 2;
    return (hi << 32) | lo;
}

double Stream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::normal()
{
    // 1 - u lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Stream::below(std::uint64_t bound)
{
    // Lemire's nearly-divisionless rejection.
    __extension__ using u128 = unsigned __int128;
    std::uint64_t x = next_u64();
    u128 m = static_cast<u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (low < threshold) {
            x = next_u64();
            m = static_cast<u128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace percograph

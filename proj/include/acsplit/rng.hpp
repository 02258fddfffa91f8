#pragma once

#include <cstdint>
#include <string_view>

namespace acsplit {

/**
 * Counter-based SplitMix64.
 *
 * Draw n of stream s is mix(seed + (s * 2^32 + n + 1) * golden), so any draw can
 * be produced independently of the others and every result depends only on
 * (seed, stream, index).
 */
class SplitMix64 {
public:
    static constexpr std::string_view name = "splitmix64-counter";

    explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : seed_(seed), stream_(stream) {}

    std::uint64_t at(std::uint64_t index) const noexcept {
        std::uint64_t z = seed_ + ((stream_ << 32) + index + 1) * kGolden;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in the open interval (0, 1).
    double uniform_open(std::uint64_t index) const noexcept {
        return (static_cast<double>(at(index) >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform double in [0, 1).
    double uniform(std::uint64_t index) const noexcept {
        return static_cast<double>(at(index) >> 11) * 0x1.0p-53;
    }

    std::uint64_t next() noexcept { return at(counter_++); }
    double next_uniform() noexcept { return uniform(counter_++); }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace acsplit

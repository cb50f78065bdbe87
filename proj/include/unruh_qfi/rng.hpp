#pragma once

#include <cstdint>
#include <limits>

namespace unruh_qfi {

/**
 * Counter-based 64-bit generator.
 *
 * Draw number i (i = 0, 1, ...) from key k is
 *
 *     z = k + (i + 1) * 0x9E3779B97F4A7C15        (mod 2^64)
 *     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
 *     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
 *     out = z ^ (z >> 31)
 *
 * which is the SplitMix64 output sequence seeded with k, so any language can
 * reproduce a stream from (key, index) alone. split(s) derives the child key
 * mix(k ^ mix(s + 0x9E3779B97F4A7C15)) for independent sub-streams.
 * uniform() maps the top 53 bits to [0, 1).
 */
class CounterRng {
public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit constexpr CounterRng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Stateless access to draw number `index`.
    static constexpr std::uint64_t at(std::uint64_t key, std::uint64_t index) { return mix(key + (index + 1) * kGamma); }

    constexpr std::uint64_t operator()() { return at(key_, counter_++); }

    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    constexpr CounterRng split(std::uint64_t stream) const { return CounterRng(mix(key_ ^ mix(stream + kGamma))); }

    constexpr std::uint64_t key() const { return key_; }
    constexpr std::uint64_t counter() const { return counter_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace unruh_qfi

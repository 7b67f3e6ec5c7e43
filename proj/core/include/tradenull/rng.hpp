#ifndef TRADENULL_RNG_HPP
#define TRADENULL_RNG_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <random>
#include <utility>

namespace tradenull {

/// 64-bit avalanche mix used to derive independent child seeds from a base
/// seed: child i of `seed` is mix_seed(seed, i). This is the splitmix64
/// finalizer applied to seed + GOLDEN64 * (i + 1). The constants below are
/// part of the reproducibility contract: changing them changes every
/// seeded ensemble.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    constexpr std::uint64_t GOLDEN64 = 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = seed + GOLDEN64 * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seeded generator with portable draws.
///
/// The engine is std::mt19937_64, whose output sequence for a given seed is
/// fully specified by the standard. The bounded/real draws below are
/// hand-rolled because std::uniform_int_distribution is implementation
/// defined; with these, a (seed, call sequence) pair replays identically
/// across compilers and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n). Masked rejection, no modulo bias.
    std::int64_t bounded(std::int64_t n) {
        assert(n > 0);
        const auto un = static_cast<std::uint64_t>(n);
        const std::uint64_t mask = std::bit_ceil(un) - 1;
        std::uint64_t x;
        do {
            x = next_u64() & mask;
        } while (x >= un);
        return static_cast<std::int64_t>(x);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double real53() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Two distinct indices drawn uniformly without replacement from [0, n).
    std::pair<std::int64_t, std::int64_t> distinct_pair(std::int64_t n) {
        assert(n >= 2);
        const std::int64_t first = bounded(n);
        std::int64_t second = bounded(n - 1);
        if (second >= first) ++second;
        return {first, second};
    }

    /// Fisher-Yates shuffle of [first, last).
    template <typename It>
    void shuffle(It first, It last) {
        const auto n = last - first;
        for (auto i = n - 1; i > 0; --i) {
            const auto j = bounded(i + 1);
            using std::swap;
            swap(first[i], first[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace tradenull

#endif

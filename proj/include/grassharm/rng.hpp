#pragma once

// Counter-based random streams: every (seed, stream, index) triple names an
// independent generator, so results never depend on how work is split
// between threads.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace grassharm {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace detail

struct StreamKey {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;  ///< which experiment / sampler within a run
    std::uint64_t index = 0;   ///< sample number within the stream
};

/// xoshiro256** keyed by a StreamKey. Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(StreamKey key)
    {
        std::uint64_t sm = key.seed;
        std::uint64_t h = detail::splitmix64(sm);
        sm = h ^ (key.stream * 0xD1B54A32D192ED03ULL);
        h = detail::splitmix64(sm);
        sm = h ^ (key.index * 0xAEF17502108EF2D9ULL);
        for (auto& word : s_) word = detail::splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        const std::uint64_t result = detail::rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    /// Uniform on (0, 1), never exactly 0.
    double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard complex Gaussian, E|z|^2 = 1.
    std::complex<double> complex_normal()
    {
        const double radius = std::sqrt(-std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)) % bound; }

private:
    std::uint64_t s_[4]{};
};

}  // namespace grassharm

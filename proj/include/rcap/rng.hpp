#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rcap {

/// One SplitMix64 step; used only to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Mixes a base seed with a path of indices (scale, trial, ...) so that every
/// stream is a pure function of its coordinates, independent of scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = splitmix64(seed);
    for (auto p : path) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

/**
 * The library's only random source: std::mt19937_64, whose output sequence is
 * fixed by the C++ standard. The standard distributions are avoided because
 * their algorithms are implementation-defined; the conversions below are
 * written out so results agree across toolchains.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// True with probability p (p <= 0 never, p >= 1 always).
    bool bernoulli(double p) { return unit() < p; }

    /// True with probability exactly 2^-k.
    bool coin_power_of_two(int k) {
        if (k <= 0) return true;
        if (k >= 64) return false;
        return (next() >> (64 - k)) == 0;
    }

    /// Uniform on [0, bound), bound >= 1, rejection sampling without bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = (~std::uint64_t{0} / bound) * bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace rcap

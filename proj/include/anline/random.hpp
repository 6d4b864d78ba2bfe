#pragma once

// Platform-independent seeded generator. Standard distributions are not
// bit-reproducible across library implementations, so the mapping from raw
// 64-bit output to integers and doubles is done here.

#include <anline/exact.hpp>

#include <cstdint>

namespace anline {

class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : state_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi)
    {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin(double p = 0.5) { return unit() < p; }

    GaussianRational gaussian_integer(long bound) { return {Rational(uniform(-bound, bound)), Rational(uniform(-bound, bound))}; }

    /// p/q with |p| <= num_bound and 1 <= q <= den_bound.
    Rational rational(long num_bound, long den_bound)
    {
        Rational q(uniform(-num_bound, num_bound), uniform(1, den_bound));
        q.canonicalize();
        return q;
    }

    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

} // namespace anline

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cadence/errors.hpp"

namespace cadence {

// Deterministic random utilities. std::mt19937_64 is fully specified by
// the standard, but the <random> distributions are not, so every draw
// here is derived from raw engine output with explicit arithmetic.
// Identical seeds therefore give identical streams on any platform.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97f4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Mix a base seed with salt values (e.g. tile coordinates) into a new seed.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = base;
    std::uint64_t h = splitmix64(s);
    s ^= a * 0x9E3779B97f4A7C15ull;
    h ^= splitmix64(s);
    s ^= b * 0xC2B2AE3D27D4EB4Full;
    h ^= splitmix64(s);
    s ^= c * 0x165667B19E3779F9ull;
    h ^= splitmix64(s);
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) {
            throw DomainError("Rng::below: bound must be positive");
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    /// Poisson draw by Knuth's product method, chunked so that large means
    /// never underflow exp(-lambda).
    std::uint64_t poisson(double lambda) {
        if (!(lambda >= 0.0)) {
            throw DomainError("Rng::poisson: lambda must be non-negative");
        }
        std::uint64_t total = 0;
        while (lambda > 0.0) {
            const double step = lambda > 30.0 ? 30.0 : lambda;
            lambda -= step;
            const double l = std::exp(-step);
            std::uint64_t k = 0;
            double p = 1.0;
            do {
                ++k;
                p *= uniform();
            } while (p > l);
            total += k - 1;
        }
        return total;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace cadence

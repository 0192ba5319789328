#ifndef GRKMEANS_RANDOM_HPP
#define GRKMEANS_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

/**
 * @file random.hpp
 *
 * @brief Portable seeded random stream.
 *
 * The engine is `std::mt19937_64`, whose output sequence is fixed by the C++
 * standard. The distributions from `<random>` are not, so uniform, integer and
 * normal variates are derived here by hand. Together this makes every seeded
 * computation in the library reproducible across standard libraries.
 *
 * Independent streams are obtained with `derive_seed()`, which mixes a base
 * seed and a stream index through SplitMix64. Stream `r` of base seed `s` is
 * `Rng(derive_seed(s, r))`.
 */

namespace grkmeans {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/**
 * Seed of sub-stream `stream` of `base`. Distinct `(base, stream)` pairs give
 * statistically independent seeds.
 */
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(base ^ splitmix64(stream ^ 0x5851f42d4c957f2dULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer on [0, n), unbiased by rejection. Requires n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = -n % n;  // 2^64 mod n
        while (true) {
            std::uint64_t x = engine_();
            if (x >= limit) {
                return x % n;
            }
        }
    }

    /// Standard normal by the Marsaglia polar method.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * factor;
        has_spare_ = true;
        return u * factor;
    }

    double normal(double mean, double sd) {
        return mean + sd * normal();
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0;
    bool has_spare_ = false;
};

}

#endif

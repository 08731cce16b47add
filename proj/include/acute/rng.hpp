#pragma once

#include <cmath>
#include <cstdint>

namespace acute {

// splitmix64: state += 0x9E3779B97F4A7C15, then the standard finalizer.
// Documented constants so streams can be reproduced outside C++.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : s_(seed) {}
    std::uint64_t next()
    {
        std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, n) by rejection; n > 0.
    std::uint64_t below(std::uint64_t n)
    {
        std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        for (;;) {
            std::uint64_t x = next();
            if (x < limit) return x % n;
        }
    }
    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Standard normal, Box-Muller (one value per call, no caching).
    double normal()
    {
        double u = 0;
        while (u == 0) u = uniform();
        double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
    }

private:
    std::uint64_t s_;
};

// Derived seed for retry r: the first output of splitmix64 seeded with
// seed ^ (r * 0xD1B54A32D192ED03).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t r)
{
    SplitMix64 g(seed ^ (r * 0xD1B54A32D192ED03ULL));
    return g.next();
}

}  // namespace acute

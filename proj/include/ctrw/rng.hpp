#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ctrw {

// Counter-mixed seeding so that replica streams derived from one experiment
// seed are statistically independent and reproducible across worker counts.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Stream `i` of a master seed. Mixing both words through splitmix64
    // keeps nearby (seed, i) pairs decorrelated.
    static Rng stream(std::uint64_t seed, std::uint64_t i) {
        std::uint64_t s = seed;
        splitmix64(s);
        s ^= 0xd1342543de82ef95ULL * (i + 1);
        std::uint64_t mixed = splitmix64(s);
        return Rng(mixed);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on the open interval (0,1); never returns an endpoint, so
    // logs and inverse transforms are always finite.
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double exponential() { return -std::log(uniform()); }

    double normal() {
        // Box-Muller, no spare caching: two uniforms per draw keeps the
        // stream layout independent of call history.
        const double r = std::sqrt(2.0 * exponential());
        const double theta = 6.283185307179586476925286766559 * uniform();
        return r * std::cos(theta);
    }

    std::uint64_t uniform_index(std::uint64_t n) {
        // n is tiny compared to 2^64 in all uses here; modulo bias is < 1e-15.
        return engine_() % n;
    }

    std::size_t poisson(double mean) {
        // Mean values in this codebase are O(10^3); normal approximation
        // would bias small-rate cases, so use inversion below 30 and
        // PTRS-free rejection via exponential spacings above.
        if (mean <= 0.0) return 0;
        if (mean < 30.0) {
            double p = std::exp(-mean);
            double c = p;
            double u = uniform();
            std::size_t k = 0;
            while (u > c && k < 10000) {
                ++k;
                p *= mean / static_cast<double>(k);
                c += p;
            }
            return k;
        }
        // Sum of exponential spacings until the budget is exhausted.
        std::size_t k = 0;
        double acc = exponential();
        while (acc < mean) {
            ++k;
            acc += exponential();
        }
        return k;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ctrw

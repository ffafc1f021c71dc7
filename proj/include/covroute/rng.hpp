#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace covroute {

// splitmix64, used for seed derivation and stream splitting.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic random source. All draws go through hand-rolled mappings
// rather than std:: distributions, so a given seed yields the same stream
// on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : gen_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform index in [0, n). n must be > 0.
    std::size_t uniform_index(std::size_t n) {
        // multiply-shift; bias is negligible for the small n used here
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Poisson draw by inversion (Knuth); fine for the small means used here.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace covroute

// Deterministic random sampling. All randomness in the library flows
// through this header so that identical seeds give bit-identical results
// on any platform: uniforms are produced from the top 53 bits of a
// mt19937_64 draw, never from std::uniform_real_distribution (whose
// output is implementation-defined).

#ifndef THETA13_SAMPLING_HPP
#define THETA13_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "theta13/linalg.hpp"

namespace theta13 {

// splitmix64 finalizer; used to derive independent sub-seeds from one seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1) with exactly 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; deterministic given the stream position.
    double gaussian() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::uint64_t bits() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

} // namespace theta13

#endif

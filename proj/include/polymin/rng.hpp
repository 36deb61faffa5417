#pragma once

// Deterministic random numbers. std::mt19937_64 output is specified
// bit-for-bit by the standard, but the <random> distributions are not, so
// every value derived from raw engine output is computed by hand here.

#include <cstdint>
#include <random>

#include "polymin/geometry.hpp"

namespace polymin {

// SplitMix64 step, used to derive well-separated substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Independent stream `index` of a master seed; restart i of a search
    // uses substream(seed, i) so results do not depend on thread scheduling.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        s ^= 0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL;
        std::uint64_t b = splitmix64(s);
        return Rng(a ^ (b + 0x2545f4914f6cdd1dULL * (index + 1)));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Uniform integer in [0,n) via 128-bit multiply; bias is < 2^-64 and the
    // result is identical on every conforming platform.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(gen_()) * n) >> 64);
    }

    // Uniform direction on the unit sphere.
    Vec3 unit_vector() {
        double z = 2.0 * uniform() - 1.0;
        double phi = 2.0 * kPi * uniform();
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    // Uniform point in the closed ball of given radius.
    Vec3 ball_point(double radius) {
        Vec3 dir = unit_vector();
        double r = radius * std::cbrt(uniform());
        return dir * r;
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace polymin

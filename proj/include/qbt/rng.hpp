#ifndef QBT_RNG_HPP
#define QBT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "qbt/types.hpp"

namespace qbt {

// Deterministic random source.  mt19937_64 output is specified bit-exactly;
// the distributions below avoid std::* distributions, whose results differ
// between standard library implementations, so a fixed seed gives the same
// stream everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * pi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    cx normal_cx() { return cx(normal(), normal()); }

    /// Derive an independent stream, e.g. one per trial index.
    Rng spawn(std::uint64_t stream) const {
        std::mt19937_64 tmp(mix(seed_base(), stream));
        return Rng(tmp());
    }

  private:
    std::uint64_t seed_base() const {
        // engine state is not directly observable; keep a copy-based hash
        std::mt19937_64 copy = eng_;
        return copy();
    }
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace qbt

#endif

#pragma once

// Seeded input generators for property tests.

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

namespace fmacomp::support {

class Inputs {
  public:
    explicit Inputs(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double normal() { return std::normal_distribution<double>()(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::uint64_t bits() { return rng_(); }

    /// Uniform over bit patterns of positive finite doubles, subnormals included.
    double positive_finite() {
        for (;;) {
            const double x = std::bit_cast<double>(rng_() & 0x7fffffffffffffffULL);
            if (std::isfinite(x) && x > 0.0) {
                return x;
            }
        }
    }

    /// Random significand in [1, 2) times 2^e for e uniform in [lo, hi].
    double log_uniform(int lo, int hi) { return std::ldexp(uniform(1.0, 2.0), integer(lo, hi)); }

  private:
    std::mt19937_64 rng_;
};

} // namespace fmacomp::support

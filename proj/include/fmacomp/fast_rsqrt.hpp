#pragma once

// Square-root-free reciprocal square root: a bit-level seed, two polynomial
// refinements, then either one Newton step (rcpsqrt331d) or the exact-residual
// Halley correction (rcpsqrt331d_modified).

#include <cstdint>

#include "fmacomp/fp_core.hpp"

namespace fmacomp {

namespace magic {

inline constexpr std::uint64_t branch_mask = 0x0010000000000000ULL; // lowest bit of the biased exponent
inline constexpr std::uint64_t magic_a = 0x5fdb3d14170034b6ULL;
inline constexpr double coeff_a1 = 2.33124735553421569;
inline constexpr double coeff_a2 = 1.07497362654295614;
inline constexpr std::uint64_t magic_b = 0x5fe33d18a2b9ef5fULL;
inline constexpr double coeff_b1 = 0.82421942523718461;
inline constexpr double coeff_b2 = 2.1499494964450325;
inline constexpr double shared_coeff = 1.5000000034937999;

} // namespace magic

enum class SeedBranch { magic_a, magic_b };

/// Which seed constant x selects: magic_a for an odd biased exponent.
[[nodiscard]] inline SeedBranch seed_branch(double x) noexcept {
    return (to_bits(x) & magic::branch_mask) != 0 ? SeedBranch::magic_a : SeedBranch::magic_b;
}

namespace fast_rsqrt_detail {

/// Estimate after the seed and both polynomial refinements.
[[nodiscard]] inline double refined_estimate(double x, double mxhalf) noexcept {
    const std::uint64_t i = to_bits(x);
    double y = 0.0;
    if ((i & magic::branch_mask) != 0) {
        y = from_bits(magic::magic_a - (i >> 1));
        y = magic::coeff_a1 * y * fma_rn(-x, y * y, magic::coeff_a2);
    } else {
        y = from_bits(magic::magic_b - (i >> 1));
        y = magic::coeff_b1 * y * fma_rn(-x, y * y, magic::coeff_b2);
    }
    return y * fma_rn(mxhalf, y * y, magic::shared_coeff);
}

} // namespace fast_rsqrt_detail

[[nodiscard]] inline double rcpsqrt331d(double x) {
    require_kernel_range(x, "rcpsqrt331d");
    const double mxhalf = -0.5 * x;
    const double y = fast_rsqrt_detail::refined_estimate(x, mxhalf);
    const double r = fma_rn(mxhalf, y * y, 0.5);
    return fma_rn(y, r, y);
}

[[nodiscard]] inline double rcpsqrt331d_modified(double x) {
    require_kernel_range(x, "rcpsqrt331d_modified");
    const double mxhalf = -0.5 * x;
    const double y = fast_rsqrt_detail::refined_estimate(x, mxhalf);
    const double r = 1.0 / x;
    const double sigma = fma_rn(r, mxhalf, 0.5);
    const double tau = fma_rn(y, y, -r);
    const double nu_bar = fma_rn(mxhalf, tau, sigma);
    const double nu = fma_rn(1.5 * nu_bar, nu_bar, nu_bar);
    return fma_rn(y, nu, y);
}

} // namespace fmacomp

#pragma once

// Binary64 primitives shared by all kernels.
//
// Every kernel in this library assumes round-to-nearest-even and a single-rounding
// fused multiply-add. Translation units that include these headers must be compiled
// with floating-point contraction disabled (-ffp-contract=off); the CMake target
// `fmacomp::fmacomp` sets this for its consumers.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "fmacomp/errors.hpp"

namespace fmacomp {

/// Half an ulp of one: 2^-53.
inline constexpr double unit_roundoff = 0x1p-53;

/// Kernels accept inputs in [kernel_min, kernel_max]; wider inputs go through the
/// power-of-4 scaling wrappers.
inline constexpr double kernel_min = 0x1p-510;
inline constexpr double kernel_max = 0x1p+510;

[[nodiscard]] inline double fma_rn(double a, double b, double c) noexcept { return std::fma(a, b, c); }

[[nodiscard]] constexpr std::uint64_t to_bits(double x) noexcept { return std::bit_cast<std::uint64_t>(x); }
[[nodiscard]] constexpr double from_bits(std::uint64_t bits) noexcept { return std::bit_cast<double>(bits); }

/// Unbiased exponent e with |x| in [2^e, 2^(e+1)); also correct for subnormals.
[[nodiscard]] inline int binade(double x) noexcept { return std::ilogb(x); }

/// Spacing of binary64 values at x: 2^(e-52) for |x| in [2^e, 2^(e+1)). Subnormal
/// inputs get the fixed subnormal spacing 2^-1074.
[[nodiscard]] inline double ulp_of(double x) {
    if (!std::isfinite(x) || x == 0.0) {
        throw domain_error("ulp_of: argument must be finite and nonzero");
    }
    const int e = binade(x);
    if (e < -1022) {
        return std::numeric_limits<double>::denorm_min();
    }
    return std::ldexp(1.0, e - 52);
}

/// Monotone map from binary64 onto signed integers; +0 and -0 both map to 0.
[[nodiscard]] inline std::int64_t ordered_int(double x) noexcept {
    const auto bits = to_bits(x);
    const auto magnitude = static_cast<std::int64_t>(bits & 0x7fffffffffffffffULL);
    return (bits >> 63) != 0 ? -magnitude : magnitude;
}

/// Number of binary64 steps between a and b. Both arguments must lie in the same
/// sign class (zero belongs to both).
[[nodiscard]] inline std::uint64_t ulp_distance(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) {
        throw domain_error("ulp_distance: NaN argument");
    }
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
        throw domain_error("ulp_distance: arguments differ in sign");
    }
    const std::int64_t ia = ordered_int(a);
    const std::int64_t ib = ordered_int(b);
    return ia > ib ? static_cast<std::uint64_t>(ia - ib) : static_cast<std::uint64_t>(ib - ia);
}

/// x = mantissa * 4^exponent with mantissa in [1, 4).
struct ScaledValue {
    double mantissa;
    int exponent;

    friend bool operator==(const ScaledValue&, const ScaledValue&) = default;
};

[[nodiscard]] inline ScaledValue split_pow4(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw domain_error("split_pow4: argument must be positive and finite");
    }
    int e = 0;
    const double f = std::frexp(x, &e); // x = f * 2^e, f in [1/2, 1); exact for subnormals
    const int binary_exp = e - 1;       // x = (2f) * 2^binary_exp
    const int k = binary_exp >= 0 ? binary_exp / 2 : -((1 - binary_exp) / 2);
    return {std::ldexp(f, binary_exp - 2 * k + 1), k};
}

/// Probe that distinguishes a fused multiply-add from a multiply followed by an add.
/// (1 + 2^-30)^2 - 1 = 2^-29 + 2^-60 is representable; a two-rounding evaluation
/// loses the 2^-60 term.
[[nodiscard]] inline bool fma_is_single_rounding() noexcept {
    volatile double a = 1.0 + 0x1p-30;
    volatile double c = -1.0;
    volatile double m = -0.5 * (1.0 - 0x1p-52);
    volatile double b = 1.0 + 0x1p-52;
    volatile double h = 0.5;
    const bool square_ok = fma_rn(a, a, c) == 0x1p-29 + 0x1p-60;
    const bool residual_ok = fma_rn(m, b, h) == 0x1p-105;
    return square_ok && residual_ok;
}

/// Throws if the platform's FMA is not single-rounding.
inline void require_single_rounding_fma() {
    if (!fma_is_single_rounding()) {
        throw std::runtime_error("fused multiply-add is not single-rounding on this platform");
    }
}

[[nodiscard]] inline bool in_kernel_range(double x) noexcept { return x >= kernel_min && x <= kernel_max; }

inline void require_kernel_range(double x, const char* who) {
    if (!in_kernel_range(x)) {
        throw domain_error(std::string(who) + ": argument outside [2^-510, 2^510]");
    }
}

} // namespace fmacomp

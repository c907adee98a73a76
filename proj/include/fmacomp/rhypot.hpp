#pragma once

// Reciprocal hypotenuse 1/sqrt(x^2 + y^2).
//
// The sum of squares is generally not representable, so the compensated kernel carries
// it as an unevaluated pair s + s_e (rounded sum plus a Fast2Sum-style error term built
// from the exact square residuals). The residual of r = RN(1/s) against that pair is
//
//   sigma_res = 1 - r (s + s_e)              (to O(u^2) relative accuracy)
//   1 - s rho^2 = sigma_res + s (r - rho^2) = sigma_res + s tau
//
// and rho + rho * (1 - s rho^2)/2 is the Newton correction of rho = RN(sqrt(r)).

#include <cmath>
#include <utility>

#include "fmacomp/fp_core.hpp"

namespace fmacomp {

/// x^2 + y^2 as an unevaluated sum.
struct SumSquares {
    double s = 0.0;
    double s_e = 0.0;
};

namespace hypot_detail {

[[nodiscard]] inline SumSquares sum_squares(double x, double y) noexcept {
    const double x_sq = x * x;
    const double y_sq = y * y;
    const double s = x_sq + y_sq;
    return {s, ((y_sq - (s - x_sq)) + fma_rn(x, x, -x_sq)) + fma_rn(y, y, -y_sq)};
}

/// Intermediates of the compensated reciprocal hypotenuse, shared with the Givens kernel.
struct Residual {
    SumSquares sum;
    double sigma_res = 0.0;
    double rho = 0.0; // RN(sqrt(RN(1/s)))
    double tau = 0.0; // r - rho^2, exact
    bool in_range = false;
};

/// Unevaluated-sum and residual computation for |x| >= |y| after canonicalization.
/// in_range is false when an intermediate left the range where the residuals are exact.
[[nodiscard]] inline Residual residual(double x, double y) noexcept {
    Residual out;
    out.sum = sum_squares(x, y);
    const double s = out.sum.s;
    const double r = 1.0 / s;
    out.sigma_res = fma_rn(-r, out.sum.s_e, fma_rn(-r, s, 1.0));
    out.rho = std::sqrt(r);
    out.tau = fma_rn(-out.rho, out.rho, r);
    // x^2 >= 2^-900 keeps a subnormal y_sq's rounding error below 2^-175 relative to s;
    // s <= 2^1000 keeps r and every later product normal.
    out.in_range = x * x >= 0x1p-900 && s <= 0x1p+1000;
    return out;
}

/// Magnitudes ordered so the first is the larger.
[[nodiscard]] inline std::pair<double, double> ordered_abs(double a, double b) noexcept {
    double x = std::fabs(a);
    double y = std::fabs(b);
    if (x < y) {
        std::swap(x, y);
    }
    return {x, y};
}

/// Even exponent 2k that brings x into [1, 4).
[[nodiscard]] inline int pow4_rescale_exponent(double x) noexcept { return -2 * split_pow4(x).exponent; }

inline void require_pair(double x, double y, const char* who) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw domain_error(std::string(who) + ": non-finite argument");
    }
    if (x == 0.0 && y == 0.0) {
        throw domain_error(std::string(who) + ": both arguments are zero");
    }
}

} // namespace hypot_detail

/// Requires x >= y >= 0; both squares should be in the normal range (y = 0 is fine).
/// s_e is accumulated strictly left to right.
[[nodiscard]] inline SumSquares sum_squares_ee(double x, double y) {
    if (!(x >= y) || !(y >= 0.0) || !std::isfinite(x)) {
        throw domain_error("sum_squares_ee: requires finite x >= y >= 0");
    }
    return hypot_detail::sum_squares(x, y);
}

/// RN(sqrt(RN(1/RN(RN(x^2) + RN(y^2))))).
[[nodiscard]] inline double rhypot_naive(double x, double y) {
    hypot_detail::require_pair(x, y, "rhypot_naive");
    const double s = x * x + y * y;
    const double r = 1.0 / s;
    if (!std::isnormal(s) || !std::isnormal(r)) {
        throw range_error("rhypot_naive: x^2 + y^2 outside the normal range");
    }
    return std::sqrt(r);
}

/// Compensated 1/sqrt(x^2 + y^2); symmetric in its arguments and their signs.
/// Inputs whose intermediates leave the safe range are retried once after an exact
/// power-of-4 rescale.
[[nodiscard]] inline double rhypot_compensated(double x_in, double y_in) {
    hypot_detail::require_pair(x_in, y_in, "rhypot_compensated");
    const auto [x, y] = hypot_detail::ordered_abs(x_in, y_in);

    const auto correct = [](const hypot_detail::Residual& h) {
        const double nu = fma_rn(h.sum.s, h.tau, h.sigma_res) * 0.5;
        return fma_rn(h.rho, nu, h.rho);
    };

    const hypot_detail::Residual direct = hypot_detail::residual(x, y);
    if (direct.in_range) {
        return correct(direct);
    }
    const int k = hypot_detail::pow4_rescale_exponent(x);
    const hypot_detail::Residual scaled = hypot_detail::residual(std::ldexp(x, k), std::ldexp(y, k));
    const double rho = std::ldexp(correct(scaled), k);
    if (!std::isnormal(rho)) {
        throw range_error("rhypot_compensated: result outside the normal range");
    }
    return rho;
}

} // namespace fmacomp

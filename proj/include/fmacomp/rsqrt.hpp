#pragma once

// Reciprocal square root kernels.
//
// The naive kernel rounds twice, y = RN(sqrt(RN(1/x))), and lands within one ulp of
// the correctly rounded value. The compensated kernels recover the residual of that
// estimate exactly with FMAs and apply one correction step:
//
//   sigma  = 1/2 - (x/2) r          exact for r = RN(1/x)
//   tau    = y^2 - r                exact for y = RN(sqrt(r))
//   nu_bar = sigma - (x/2) tau      = RN((1 - x y^2) / 2)
//
// y + y*nu_bar is a Newton step (weakly rounded: at most one ulp off, with the true
// value near the centre of the bracketing interval). Replacing nu_bar with
// nu_bar (1 + 3/2 nu_bar) gives a Halley step, which has been correctly rounded on
// every input tried so far.

#include "fmacomp/fp_core.hpp"

namespace fmacomp {

/// Residual terms of the compensated step.
struct CompensationTriple {
    double sigma = 0.0;
    double tau = 0.0;
    double nu_bar = 0.0;

    friend bool operator==(const CompensationTriple&, const CompensationTriple&) = default;
};

enum class RsqrtVariant { naive, compensated, modified };

namespace rsqrt_detail {

[[nodiscard]] inline CompensationTriple residuals(double mxhalf, double r, double y) noexcept {
    CompensationTriple t;
    t.sigma = fma_rn(mxhalf, r, 0.5);
    t.tau = fma_rn(y, y, -r);
    t.nu_bar = fma_rn(mxhalf, t.tau, t.sigma);
    return t;
}

[[nodiscard]] inline double halley_factor(double nu_bar) noexcept { return fma_rn(1.5 * nu_bar, nu_bar, nu_bar); }

} // namespace rsqrt_detail

/// RN(sqrt(RN(1/x))) for x in [2^-510, 2^510].
[[nodiscard]] inline double rsqrt_naive(double x) {
    require_kernel_range(x, "rsqrt_naive");
    const double r = 1.0 / x;
    return std::sqrt(r);
}

/// sigma, tau and nu_bar for an estimate y of 1/sqrt(x) built from r = RN(1/x).
[[nodiscard]] inline CompensationTriple compensation_terms(double x, double r, double y) {
    require_kernel_range(x, "compensation_terms");
    return rsqrt_detail::residuals(-0.5 * x, r, y);
}

/// Naive estimate plus an exactly computed Newton correction.
[[nodiscard]] inline double rsqrt_compensated(double x) {
    require_kernel_range(x, "rsqrt_compensated");
    const double r = 1.0 / x;
    const double y = std::sqrt(r);
    const double mxhalf = -0.5 * x;
    const CompensationTriple t = rsqrt_detail::residuals(mxhalf, r, y);
    return fma_rn(y, t.nu_bar, y);
}

/// Naive estimate plus a Halley correction built from the exact Newton residual.
[[nodiscard]] inline double rsqrt_modified(double x) {
    require_kernel_range(x, "rsqrt_modified");
    const double r = 1.0 / x;
    const double y = std::sqrt(r);
    const double mxhalf = -0.5 * x;
    const CompensationTriple t = rsqrt_detail::residuals(mxhalf, r, y);
    const double nu = rsqrt_detail::halley_factor(t.nu_bar);
    return fma_rn(y, nu, y);
}

[[nodiscard]] inline double rsqrt_kernel(double x, RsqrtVariant variant) {
    switch (variant) {
    case RsqrtVariant::naive:
        return rsqrt_naive(x);
    case RsqrtVariant::compensated:
        return rsqrt_compensated(x);
    case RsqrtVariant::modified:
        return rsqrt_modified(x);
    }
    throw domain_error("rsqrt_kernel: unknown variant");
}

/// Any positive finite x, subnormals included: the kernel runs on the mantissa of
/// x = m * 4^k and the result is scaled by the exact factor 2^-k.
[[nodiscard]] inline double rsqrt_full_range(double x, RsqrtVariant variant) {
    if (std::isnan(x) || !(x > 0.0) || std::isinf(x)) {
        throw domain_error("rsqrt_full_range: argument must be positive and finite");
    }
    const ScaledValue sv = split_pow4(x);
    const double y = std::ldexp(rsqrt_kernel(sv.mantissa, variant), -sv.exponent);
    if (!std::isnormal(y)) {
        throw range_error("rsqrt_full_range: result out of range");
    }
    return y;
}

} // namespace fmacomp

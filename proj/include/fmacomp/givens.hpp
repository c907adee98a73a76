#pragma once

// Givens rotation generation: (c, s) = (f, g) / sqrt(f^2 + g^2).
//
// The compensated kernel reuses the reciprocal hypotenuse residuals and folds the
// Newton correction into the final products: c = f rho + f (rho nu/2), one FMA per
// output. Signs flow only through f and g, so c carries the sign of f and s the sign
// of g. Zero inputs are handled first: g = 0 gives (1, g) and f = 0 gives (f, +-1).

#include <cmath>
#include <optional>

#include "fmacomp/fp_core.hpp"
#include "fmacomp/rhypot.hpp"
#include "fmacomp/rotation.hpp"

namespace fmacomp {

namespace givens_detail {

[[nodiscard]] inline std::optional<GivensRotation> exceptional(double f, double g) {
    hypot_detail::require_pair(f, g, "dlartg");
    if (g == 0.0) {
        return GivensRotation{1.0, g};
    }
    if (f == 0.0) {
        return GivensRotation{f, std::copysign(1.0, g)};
    }
    return std::nullopt;
}

[[nodiscard]] inline GivensRotation apply(double f, double g, const hypot_detail::Residual& h) noexcept {
    const double nu_bar = h.rho * fma_rn(h.sum.s, h.tau, h.sigma_res) * 0.5;
    return {fma_rn(f, h.rho, f * nu_bar), fma_rn(g, h.rho, g * nu_bar)};
}

} // namespace givens_detail

/// h = RN(sqrt(RN(f^2 + g^2))), c = RN(f/h), s = RN(g/h).
[[nodiscard]] inline GivensRotation dlartg_naive(double f, double g) {
    if (const auto special = givens_detail::exceptional(f, g)) {
        return *special;
    }
    const double sum = f * f + g * g;
    if (!std::isnormal(sum)) {
        throw range_error("dlartg_naive: f^2 + g^2 outside the normal range");
    }
    const double h = std::sqrt(sum);
    return {f / h, g / h};
}

/// FMA-compensated rotation; inputs with out-of-range intermediates are rescaled once by
/// an exact power of 4, which leaves (c, s) unchanged.
[[nodiscard]] inline GivensRotation dlartg_compensated(double f, double g) {
    if (const auto special = givens_detail::exceptional(f, g)) {
        return *special;
    }
    const auto [x, y] = hypot_detail::ordered_abs(f, g);
    const hypot_detail::Residual direct = hypot_detail::residual(x, y);
    if (direct.in_range) {
        return givens_detail::apply(f, g, direct);
    }
    const int k = hypot_detail::pow4_rescale_exponent(x);
    const double fs = std::ldexp(f, k);
    const double gs = std::ldexp(g, k);
    const hypot_detail::Residual scaled = hypot_detail::residual(std::ldexp(x, k), std::ldexp(y, k));
    return givens_detail::apply(fs, gs, scaled);
}

} // namespace fmacomp

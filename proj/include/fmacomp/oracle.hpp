#pragma once

// Correctly rounded reference values for 1/sqrt(x), 1/sqrt(x^2+y^2) and the Givens
// pair (f, g)/sqrt(f^2+g^2).
//
// All three reduce to rounding q = sqrt(A/S) for exact dyadic A >= 0, S > 0. A
// candidate y is accepted once the midpoints to its neighbours bracket q; q is
// compared against a midpoint m >= 0 through the exact test A <=> m^2 * S, so no
// step ever rounds. Each result carries the comparisons that certify it.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "fmacomp/dyadic.hpp"
#include "fmacomp/fp_core.hpp"
#include "fmacomp/rotation.hpp"

namespace fmacomp {

/// Bracketing evidence for a rounded value y of a positive quantity q.
/// below = sign(q - lower midpoint), above = sign(q - upper midpoint).
struct RoundingCertificate {
    int below = 0;
    int above = 0;
    bool tie = false; // q sat exactly on a midpoint and ties-to-even decided
    int steps = 0;    // candidate moves taken from the starting estimate

    [[nodiscard]] bool brackets() const noexcept { return below > 0 && above < 0; }
};

struct OracleResult {
    double value = 0.0;
    RoundingCertificate certificate;
};

struct GivensOracleResult {
    GivensRotation rotation;
    RoundingCertificate c_certificate;
    RoundingCertificate s_certificate;

    [[nodiscard]] bool any_tie() const noexcept { return c_certificate.tie || s_certificate.tie; }
};

namespace oracle_detail {

inline constexpr int max_search_steps = 4;

/// sign(sqrt(A/S) - m); A >= 0, S > 0.
[[nodiscard]] inline int compare_root(const DyadicRational& a, const DyadicRational& s, const DyadicRational& m) {
    if (m.sign() < 0) {
        return 1;
    }
    if (m.is_zero()) {
        return a.is_zero() ? 0 : 1;
    }
    const auto ord = a <=> m * m * s;
    return ord < 0 ? -1 : (ord > 0 ? 1 : 0);
}

[[nodiscard]] inline DyadicRational midpoint(double lo, double hi) {
    if (std::isinf(hi)) {
        // Rounding boundary to +inf: max + ulp(max)/2.
        constexpr double max = std::numeric_limits<double>::max();
        return dyadic(max) + DyadicRational::pow2(970);
    }
    return (dyadic(lo) + dyadic(hi)).scaled(-1);
}

[[nodiscard]] inline bool is_even(double y) noexcept { return (to_bits(y) & 1U) == 0; }

[[nodiscard]] inline double next_up(double y) noexcept { return std::nextafter(y, std::numeric_limits<double>::infinity()); }
[[nodiscard]] inline double next_down(double y) noexcept { return std::nextafter(y, -std::numeric_limits<double>::infinity()); }

/// Comparisons of q = sqrt(A/S) against both midpoints around y >= 0.
[[nodiscard]] inline RoundingCertificate bracket(const DyadicRational& a, const DyadicRational& s, double y) {
    RoundingCertificate cert;
    cert.below = y > 0.0 ? compare_root(a, s, midpoint(next_down(y), y)) : 1;
    cert.above = compare_root(a, s, midpoint(y, next_up(y)));
    return cert;
}

/// Seed for sqrt(A/S) from leading-bit approximations; within a few ulps.
[[nodiscard]] inline double seed_estimate(const DyadicRational& a, const DyadicRational& s) {
    if (a.is_zero()) {
        return 0.0;
    }
    auto [fa, ea] = a.approx();
    const auto [fs, es] = s.approx();
    std::int64_t d = ea - es;
    if (d % 2 != 0) {
        fa *= 2.0;
        d -= 1;
    }
    const std::int64_t half = d / 2;
    if (half > 2000) {
        return std::numeric_limits<double>::max();
    }
    if (half < -2000) {
        return 0.0;
    }
    const double y = std::ldexp(std::sqrt(fa / fs), static_cast<int>(half));
    return std::isinf(y) ? std::numeric_limits<double>::max() : y;
}

/// RN(sqrt(A/S)) searched from `start`.
[[nodiscard]] inline OracleResult round_root(const DyadicRational& a, const DyadicRational& s, double start) {
    double y = start;
    for (int step = 0; step <= max_search_steps; ++step) {
        RoundingCertificate cert = bracket(a, s, y);
        cert.steps = step;
        if (cert.below < 0) {
            y = next_down(y);
            continue;
        }
        if (cert.above > 0) {
            if (y == std::numeric_limits<double>::max()) {
                throw range_error("oracle: correctly rounded result overflows");
            }
            y = next_up(y);
            continue;
        }
        if (cert.above == 0) {
            cert.tie = true;
            const double up = next_up(y);
            if (std::isinf(up)) {
                throw range_error("oracle: correctly rounded result overflows");
            }
            if (!is_even(y)) {
                y = up;
            }
        } else if (cert.below == 0) {
            cert.tie = true;
            const double down = next_down(y);
            if (!is_even(y)) {
                y = down;
            }
        }
        if (cert.tie) {
            const int steps = cert.steps;
            cert = bracket(a, s, y);
            cert.tie = true;
            cert.steps = steps;
        }
        return {y, cert};
    }
    throw std::logic_error("oracle: rounding search did not converge within 4 ulp of the start");
}

/// True when y is RN(sqrt(A/S)), re-derived from scratch.
[[nodiscard]] inline bool certifies(const DyadicRational& a, const DyadicRational& s, double y) {
    if (!(y >= 0.0) || !std::isfinite(y)) {
        return false;
    }
    const RoundingCertificate cert = bracket(a, s, y);
    if (cert.brackets()) {
        return true;
    }
    // On a tie the value must be the even neighbour, and q must not lie outside.
    if (cert.below == 0 && cert.above < 0) {
        return is_even(y);
    }
    if (cert.above == 0 && cert.below > 0) {
        return is_even(y);
    }
    return false;
}

inline void require_finite_pair(double x, double y, const char* who) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw domain_error(std::string(who) + ": non-finite argument");
    }
    if (x == 0.0 && y == 0.0) {
        throw domain_error(std::string(who) + ": both arguments are zero");
    }
}

[[nodiscard]] inline DyadicRational sum_of_squares(double x, double y) {
    const DyadicRational dx = dyadic(x);
    const DyadicRational dy = dyadic(y);
    return dx * dx + dy * dy;
}

} // namespace oracle_detail

/// RN(1/sqrt(x)) with its certificate.
[[nodiscard]] inline OracleResult rn_rsqrt_certified(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw domain_error("rn_rsqrt_ref: argument must be positive and finite");
    }
    // Naive estimate on the power-of-4 reduced argument, scaled back exactly.
    const ScaledValue sv = split_pow4(x);
    const double start = std::ldexp(std::sqrt(1.0 / sv.mantissa), -sv.exponent);
    return oracle_detail::round_root(DyadicRational::from_int(1), dyadic(x), start);
}

[[nodiscard]] inline double rn_rsqrt_ref(double x) { return rn_rsqrt_certified(x).value; }

[[nodiscard]] inline bool certify_rsqrt(double x, double y) {
    return oracle_detail::certifies(DyadicRational::from_int(1), dyadic(x), y);
}

/// RN(1/sqrt(x^2 + y^2)) with its certificate.
[[nodiscard]] inline OracleResult rn_rhypot_certified(double x, double y) {
    oracle_detail::require_finite_pair(x, y, "rn_rhypot_ref");
    const DyadicRational one = DyadicRational::from_int(1);
    const DyadicRational s = oracle_detail::sum_of_squares(x, y);
    return oracle_detail::round_root(one, s, oracle_detail::seed_estimate(one, s));
}

[[nodiscard]] inline double rn_rhypot_ref(double x, double y) { return rn_rhypot_certified(x, y).value; }

[[nodiscard]] inline bool certify_rhypot(double x, double y, double rho) {
    return oracle_detail::certifies(DyadicRational::from_int(1), oracle_detail::sum_of_squares(x, y), rho);
}

/// (RN(f/h), RN(g/h)) with h = sqrt(f^2 + g^2), each with its certificate.
[[nodiscard]] inline GivensOracleResult rn_givens_certified(double f, double g) {
    oracle_detail::require_finite_pair(f, g, "rn_givens_ref");
    const DyadicRational s = oracle_detail::sum_of_squares(f, g);
    const auto component = [&s](double v) {
        const DyadicRational dv = dyadic(v);
        const DyadicRational a = dv * dv;
        OracleResult r = oracle_detail::round_root(a, s, oracle_detail::seed_estimate(a, s));
        r.value = std::copysign(r.value, v);
        return r;
    };
    const OracleResult c = component(f);
    const OracleResult sn = component(g);
    return {{c.value, sn.value}, c.certificate, sn.certificate};
}

[[nodiscard]] inline GivensRotation rn_givens_ref(double f, double g) { return rn_givens_certified(f, g).rotation; }

[[nodiscard]] inline bool certify_givens(double f, double g, const GivensRotation& rot) {
    const DyadicRational s = oracle_detail::sum_of_squares(f, g);
    const auto ok = [&s](double v, double out) {
        if (std::signbit(v) != std::signbit(out)) {
            return false;
        }
        const DyadicRational dv = dyadic(v);
        return oracle_detail::certifies(dv * dv, s, std::fabs(out));
    };
    return ok(f, rot.c) && ok(g, rot.s);
}

} // namespace fmacomp

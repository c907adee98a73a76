#pragma once

// Exact dyadic rationals: mantissa * 2^exponent with an unbounded integer mantissa.
// Every finite binary64 value is one, and sums and products of dyadic rationals stay
// dyadic, so all comparisons the oracle needs can be carried out without rounding.

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "fmacomp/fp_core.hpp"

namespace fmacomp {

// Unbounded, with 384 bits of inline storage: the oracle's products (up to ~220 bits
// for sums of squares times squared midpoints) never touch the heap.
using big_int = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<384, 0, boost::multiprecision::signed_magnitude,
                                           boost::multiprecision::unchecked, std::allocator<boost::multiprecision::limb_type>>,
    boost::multiprecision::et_off>;

class DyadicRational {
  public:
    DyadicRational() = default;

    /// mantissa * 2^exponent, canonicalized.
    DyadicRational(big_int mantissa, std::int64_t exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {
        normalize();
    }

    /// Exact conversion of a finite binary64 value (subnormals included).
    static DyadicRational from_double(double x) {
        if (!std::isfinite(x)) {
            throw domain_error("DyadicRational::from_double: non-finite value");
        }
        const auto bits = to_bits(x);
        const auto biased = static_cast<int>((bits >> 52) & 0x7ff);
        std::uint64_t significand = bits & 0x000fffffffffffffULL;
        std::int64_t exponent = 0;
        if (biased == 0) {
            exponent = -1074;
        } else {
            significand |= 0x0010000000000000ULL;
            exponent = biased - 1075;
        }
        big_int m = significand;
        if ((bits >> 63) != 0) {
            m = -m;
        }
        return {std::move(m), exponent};
    }

    static DyadicRational from_int(std::int64_t v) { return {big_int(v), 0}; }

    /// 2^k.
    static DyadicRational pow2(std::int64_t k) { return {big_int(1), k}; }

    [[nodiscard]] const big_int& mantissa() const noexcept { return mantissa_; }
    [[nodiscard]] std::int64_t exponent() const noexcept { return exponent_; }
    [[nodiscard]] int sign() const noexcept { return mantissa_.sign(); }
    [[nodiscard]] bool is_zero() const noexcept { return mantissa_.is_zero(); }

    /// Position of the leading one bit: 2^top <= |value| < 2^(top+1). Requires nonzero.
    [[nodiscard]] std::int64_t top_bit() const {
        return static_cast<std::int64_t>(boost::multiprecision::msb(abs(mantissa_))) + exponent_;
    }

    /// Exact conversion back to binary64, or nullopt when the value is not representable.
    [[nodiscard]] std::optional<double> to_double() const {
        if (is_zero()) {
            return 0.0;
        }
        const auto width = boost::multiprecision::msb(abs(mantissa_)) + 1;
        if (width > 53) {
            return std::nullopt;
        }
        const std::int64_t top = top_bit();
        if (top > 1023 || exponent_ < -1074) {
            return std::nullopt;
        }
        const auto m = static_cast<double>(static_cast<std::int64_t>(mantissa_));
        return std::ldexp(m, static_cast<int>(exponent_));
    }

    /// Approximation as (fraction in [1,2) with sign, binary exponent); accurate to a
    /// few ulps, used only to seed searches.
    [[nodiscard]] std::pair<double, std::int64_t> approx() const {
        if (is_zero()) {
            return {0.0, 0};
        }
        const big_int mag = abs(mantissa_);
        const auto top = static_cast<std::int64_t>(boost::multiprecision::msb(mag));
        const std::int64_t keep = 62;
        const std::uint64_t head =
            top > keep ? static_cast<std::uint64_t>(mag >> static_cast<unsigned>(top - keep)) : static_cast<std::uint64_t>(mag);
        const std::int64_t head_shift = top > keep ? top - keep : 0;
        double frac = std::ldexp(static_cast<double>(head), static_cast<int>(-(top - head_shift)));
        if (sign() < 0) {
            frac = -frac;
        }
        return {frac, top + exponent_};
    }

    [[nodiscard]] DyadicRational scaled(std::int64_t k) const {
        DyadicRational r = *this;
        if (!r.is_zero()) {
            r.exponent_ += k;
        }
        return r;
    }

    friend DyadicRational operator-(const DyadicRational& a) {
        DyadicRational r = a;
        r.mantissa_ = -r.mantissa_;
        return r;
    }

    friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
        if (a.is_zero()) {
            return b;
        }
        if (b.is_zero()) {
            return a;
        }
        const std::int64_t e = std::min(a.exponent_, b.exponent_);
        big_int sum = a.mantissa_ << static_cast<unsigned>(a.exponent_ - e);
        sum += b.mantissa_ << static_cast<unsigned>(b.exponent_ - e);
        return {std::move(sum), e};
    }

    friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) { return a + (-b); }

    friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
        // Odd times odd is odd, so the product is already canonical.
        DyadicRational r;
        if (a.is_zero() || b.is_zero()) {
            return r;
        }
        r.mantissa_ = a.mantissa_ * b.mantissa_;
        r.exponent_ = a.exponent_ + b.exponent_;
        return r;
    }

    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
        const int sa = a.sign();
        const int sb = b.sign();
        if (sa != sb) {
            return sa <=> sb;
        }
        if (sa == 0) {
            return std::strong_ordering::equal;
        }
        const std::int64_t ta = a.top_bit();
        const std::int64_t tb = b.top_bit();
        if (ta != tb) {
            return sa > 0 ? ta <=> tb : tb <=> ta;
        }
        // Equal leading bit: align to the smaller exponent; the shift is bounded by the
        // mantissa widths.
        if (a.exponent_ == b.exponent_) {
            return a.mantissa_.compare(b.mantissa_) <=> 0;
        }
        if (a.exponent_ > b.exponent_) {
            return (a.mantissa_ << static_cast<unsigned>(a.exponent_ - b.exponent_)).compare(b.mantissa_) <=> 0;
        }
        return a.mantissa_.compare(b.mantissa_ << static_cast<unsigned>(b.exponent_ - a.exponent_)) <=> 0;
    }

    friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
        // Canonical form makes equality structural.
        return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
    }

    [[nodiscard]] std::string to_string() const {
        return mantissa_.str() + "*2^" + std::to_string(exponent_);
    }

    friend std::ostream& operator<<(std::ostream& os, const DyadicRational& d) { return os << d.to_string(); }

  private:
    void normalize() {
        if (mantissa_.is_zero()) {
            exponent_ = 0;
            return;
        }
        const auto tz = boost::multiprecision::lsb(abs(mantissa_));
        if (tz != 0) {
            mantissa_ >>= tz;
            exponent_ += static_cast<std::int64_t>(tz);
        }
    }

    big_int mantissa_{0};
    std::int64_t exponent_ = 0;
};

/// Shorthand used throughout the oracle and tests.
[[nodiscard]] inline DyadicRational dyadic(double x) { return DyadicRational::from_double(x); }

} // namespace fmacomp

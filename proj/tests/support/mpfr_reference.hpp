#pragma once

// High-precision reference values computed with MPFR at 200 bits and rounded once to
// binary64. Independent of the dyadic oracle; a result can differ from the correctly
// rounded value only when the 200-bit intermediate straddles a binary64 midpoint.

#include <mpfr.h>

#include <utility>

namespace fmacomp::support {

class MpfrValue {
  public:
    explicit MpfrValue(mpfr_prec_t prec = 200) { mpfr_init2(v_, prec); }
    ~MpfrValue() { mpfr_clear(v_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
    mpfr_ptr get() { return v_; }

  private:
    mpfr_t v_;
};

inline constexpr mpfr_prec_t reference_precision = 200;

inline double mpfr_rsqrt(double x) {
    MpfrValue v(reference_precision);
    mpfr_set_d(v.get(), x, MPFR_RNDN);
    mpfr_rec_sqrt(v.get(), v.get(), MPFR_RNDN);
    return mpfr_get_d(v.get(), MPFR_RNDN);
}

inline void mpfr_sum_squares(mpfr_ptr out, double x, double y) {
    MpfrValue t(reference_precision);
    mpfr_set_d(out, x, MPFR_RNDN);
    mpfr_sqr(out, out, MPFR_RNDN);
    mpfr_set_d(t.get(), y, MPFR_RNDN);
    mpfr_sqr(t.get(), t.get(), MPFR_RNDN);
    mpfr_add(out, out, t.get(), MPFR_RNDN);
}

inline double mpfr_rhypot(double x, double y) {
    MpfrValue s(reference_precision);
    mpfr_sum_squares(s.get(), x, y);
    mpfr_rec_sqrt(s.get(), s.get(), MPFR_RNDN);
    return mpfr_get_d(s.get(), MPFR_RNDN);
}

inline std::pair<double, double> mpfr_givens(double f, double g) {
    MpfrValue s(reference_precision);
    MpfrValue t(reference_precision);
    mpfr_sum_squares(s.get(), f, g);
    mpfr_rec_sqrt(s.get(), s.get(), MPFR_RNDN);
    mpfr_mul_d(t.get(), s.get(), f, MPFR_RNDN);
    const double c = mpfr_get_d(t.get(), MPFR_RNDN);
    mpfr_mul_d(t.get(), s.get(), g, MPFR_RNDN);
    const double sn = mpfr_get_d(t.get(), MPFR_RNDN);
    return {c, sn};
}

} // namespace fmacomp::support

#include <gtest/gtest.h>

#include <limits>

#include "fmacomp/dyadic.hpp"
#include "fmacomp/oracle.hpp"
#include "fmacomp/rhypot.hpp"
#include "generators.hpp"

using namespace fmacomp;

TEST(SumSquaresEe, Examples) {
    const SumSquares a = sum_squares_ee(4.0, 3.0);
    EXPECT_EQ(a.s, 25.0);
    EXPECT_EQ(a.s_e, 0.0);
    const SumSquares b = sum_squares_ee(1.0, 0x1p-30);
    EXPECT_EQ(b.s, 1.0);
    EXPECT_EQ(b.s_e, 0x1p-60);
    const double x = 1.0 + 0x1p-30;
    const SumSquares c = sum_squares_ee(x, 1.0);
    EXPECT_EQ(dyadic(c.s) + dyadic(c.s_e), dyadic(x) * dyadic(x) + dyadic(1.0));
}

TEST(SumSquaresEe, OrderingPrecondition) {
    EXPECT_THROW((void)sum_squares_ee(1.0, 2.0), domain_error);
    EXPECT_THROW((void)sum_squares_ee(1.0, -0.5), domain_error);
    EXPECT_NO_THROW((void)sum_squares_ee(1.0, 0.0));
}

TEST(SumSquaresEe, UnevaluatedSumIsAccurate) {
    support::Inputs in(61);
    for (int i = 0; i < 100000; ++i) {
        double x = std::fabs(in.normal());
        double y = std::fabs(in.normal());
        if (x < y) std::swap(x, y);
        if (y == 0.0) continue;
        const SumSquares ss = sum_squares_ee(x, y);
        const DyadicRational exact = dyadic(x) * dyadic(x) + dyadic(y) * dyadic(y);
        const DyadicRational err = dyadic(ss.s) + dyadic(ss.s_e) - exact;
        // |err| <= 2^-100 * exact
        const DyadicRational bound = exact.scaled(-100);
        ASSERT_TRUE(-bound <= err && err <= bound) << x << " " << y;
    }
}

TEST(RhypotNaive, Examples) {
    EXPECT_EQ(rhypot_naive(1.0, 0.0), 1.0);
    EXPECT_LE(ulp_distance(rhypot_naive(3.0, 4.0), 0.2), 1U);
    EXPECT_THROW((void)rhypot_naive(0.0, 0.0), domain_error);
    EXPECT_THROW((void)rhypot_naive(1e200, 1.0), range_error);
    EXPECT_THROW((void)rhypot_naive(1e-200, 0.0), range_error);
}

TEST(RhypotCompensated, Examples) {
    EXPECT_EQ(rhypot_compensated(1.0, 0.0), 1.0);
    EXPECT_EQ(rhypot_compensated(3.0, 4.0), rn_rhypot_ref(3.0, 4.0));
    for (const auto& [x, y] : {std::pair{3.0, 4.0}, {4.0, 3.0}, {-3.0, 4.0}, {3.0, -4.0}, {-4.0, -3.0}}) {
        EXPECT_EQ(to_bits(rhypot_compensated(x, y)), to_bits(rhypot_compensated(3.0, 4.0)));
    }
    EXPECT_THROW((void)rhypot_compensated(0.0, -0.0), domain_error);
    EXPECT_THROW((void)rhypot_compensated(std::numeric_limits<double>::infinity(), 1.0), domain_error);
}

TEST(RhypotCompensated, RescalesOutOfRangeInputs) {
    EXPECT_EQ(rhypot_compensated(3e200, 4e200), rn_rhypot_ref(3e200, 4e200));
    EXPECT_EQ(rhypot_compensated(3e-200, 4e-200), rn_rhypot_ref(3e-200, 4e-200));
    EXPECT_EQ(rhypot_compensated(1e-300, 1e-305), rn_rhypot_ref(1e-300, 1e-305));
    EXPECT_THROW((void)rhypot_compensated(1e-310, 0.0), range_error);
    support::Inputs in(62);
    for (int i = 0; i < 20000; ++i) {
        const double x = in.log_uniform(-1000, 1000) * (in.bits() & 1 ? 1 : -1);
        const double y = std::ldexp(x, in.integer(-60, 0)) * in.uniform(0.5, 2.0);
        double ref = 0.0;
        try {
            ref = rn_rhypot_ref(x, y);
        } catch (const range_error&) {
            continue;
        }
        if (!std::isnormal(ref)) continue;
        ASSERT_EQ(rhypot_compensated(x, y), ref) << x << " " << y;
    }
}

TEST(RhypotKernels, AccuracyOnGaussianPairs) {
    support::Inputs in(63);
    for (int i = 0; i < 100000; ++i) {
        const double x = in.normal();
        const double y = in.normal();
        const double ref = rn_rhypot_ref(x, y);
        ASSERT_EQ(rhypot_compensated(x, y), ref) << x << " " << y;
        ASSERT_LE(ulp_distance(rhypot_naive(x, y), ref), 1U) << x << " " << y;
    }
}

TEST(RhypotCompensated, SymmetryAndScaleEquivariance) {
    support::Inputs in(64);
    for (int i = 0; i < 100000; ++i) {
        const double x = in.normal();
        const double y = in.normal();
        const double base = rhypot_compensated(x, y);
        ASSERT_EQ(to_bits(rhypot_compensated(std::fabs(y), std::fabs(x))), to_bits(base));
        ASSERT_EQ(to_bits(rhypot_compensated(-y, x)), to_bits(base));
        const int k = in.integer(-400, 400);
        ASSERT_EQ(to_bits(rhypot_compensated(std::ldexp(x, k), std::ldexp(y, k))), to_bits(std::ldexp(base, -k)));
    }
}

TEST(RhypotCompensated, ResidualIsAccurate) {
    support::Inputs in(65);
    const DyadicRational one = DyadicRational::from_int(1);
    for (int i = 0; i < 50000; ++i) {
        double x = std::fabs(in.normal());
        double y = std::fabs(in.normal());
        if (x < y) std::swap(x, y);
        const hypot_detail::Residual h = hypot_detail::residual(x, y);
        const double r = 1.0 / h.sum.s;
        const DyadicRational exact_sq = dyadic(x) * dyadic(x) + dyadic(y) * dyadic(y);
        const DyadicRational exact = one - dyadic(r) * exact_sq;
        const DyadicRational err = exact - dyadic(h.sigma_res);
        // O(u^2) * max(1, r (x^2 + y^2)) with a modest constant.
        DyadicRational scale = dyadic(r) * exact_sq;
        if (scale < one) scale = one;
        const DyadicRational bound = scale.scaled(-100);
        ASSERT_TRUE(-bound <= err && err <= bound) << x << " " << y;
        ASSERT_EQ(dyadic(h.tau), dyadic(r) - dyadic(h.rho) * dyadic(h.rho));
    }
}

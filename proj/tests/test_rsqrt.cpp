#include <gtest/gtest.h>

#include <limits>

#include "fmacomp/dyadic.hpp"
#include "fmacomp/oracle.hpp"
#include "fmacomp/rsqrt.hpp"
#include "generators.hpp"

using namespace fmacomp;

namespace {
constexpr double one_minus_2u = 1.0 - 0x1p-52;
constexpr std::array variants = {RsqrtVariant::naive, RsqrtVariant::compensated, RsqrtVariant::modified};
} // namespace

TEST(RsqrtNaive, Examples) {
    EXPECT_EQ(rsqrt_naive(4.0), 0.5);
    EXPECT_EQ(rsqrt_naive(0.25), 2.0);
    EXPECT_LE(ulp_distance(rsqrt_naive(2.0), rn_rsqrt_ref(2.0)), 1U);
}

TEST(RsqrtKernels, DomainErrors) {
    for (const auto v : variants) {
        for (const double x : {0.0, -1.0, 0x1p-511, 0x1p511, std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::quiet_NaN()}) {
            EXPECT_THROW((void)rsqrt_kernel(x, v), domain_error) << x;
        }
        EXPECT_NO_THROW((void)rsqrt_kernel(0x1p-510, v));
        EXPECT_NO_THROW((void)rsqrt_kernel(0x1p510, v));
    }
}

TEST(CompensationTerms, Examples) {
    EXPECT_EQ(compensation_terms(4.0, 0.25, 0.5), (CompensationTriple{0.0, 0.0, 0.0}));
    const CompensationTriple t = compensation_terms(one_minus_2u, 1.0 + 0x1p-52, 1.0);
    EXPECT_EQ(t.sigma, 0x1p-105);
    EXPECT_EQ(t.tau, -0x1p-52);
    EXPECT_EQ(t.nu_bar, 0x1p-53);
}

TEST(CompensationTerms, SigmaAndTauAreExact) {
    support::Inputs in(41);
    const DyadicRational half = DyadicRational::pow2(-1);
    for (int i = 0; i < 200000; ++i) {
        const double x = in.uniform(0.5, 2.0);
        const double r = 1.0 / x;
        const double y = std::sqrt(r);
        const CompensationTriple t = compensation_terms(x, r, y);
        const DyadicRational dx = dyadic(x);
        const DyadicRational dr = dyadic(r);
        const DyadicRational dy = dyadic(y);
        ASSERT_EQ(dyadic(t.sigma), half - dx.scaled(-1) * dr) << x;
        ASSERT_EQ(dyadic(t.tau), dy * dy - dr) << x;
        // nu_bar is the rounded exact residual (1 - x y^2)/2: within half an ulp of it.
        const DyadicRational exact = (DyadicRational::from_int(1) - dx * dy * dy).scaled(-1);
        if (t.nu_bar != 0.0) {
            const DyadicRational err = dyadic(t.nu_bar) - exact;
            const DyadicRational half_ulp = dyadic(ulp_of(t.nu_bar)).scaled(-1);
            ASSERT_TRUE(err <= half_ulp && -half_ulp <= err) << x;
        } else {
            ASSERT_TRUE(exact.is_zero());
        }
    }
}

TEST(RsqrtCompensated, Examples) {
    EXPECT_EQ(rsqrt_compensated(4.0), 0.5);
    // Round-to-even loses the correction: one ulp below the correctly rounded 1 + 2u.
    EXPECT_EQ(rsqrt_compensated(one_minus_2u), 1.0);
    EXPECT_EQ(rn_rsqrt_ref(one_minus_2u), 1.0 + 0x1p-52);
    EXPECT_EQ(rsqrt_compensated(2.0), rn_rsqrt_ref(2.0));
}

TEST(RsqrtModified, Examples) {
    EXPECT_EQ(rsqrt_modified(4.0), 0.5);
    EXPECT_EQ(rsqrt_modified(one_minus_2u), 1.0 + 0x1p-52);
}

TEST(RsqrtKernels, AccuracyAgainstOracle) {
    support::Inputs in(42);
    for (int i = 0; i < 100000; ++i) {
        const double x = in.uniform(0.5, 2.0);
        const double ref = rn_rsqrt_ref(x);
        ASSERT_LE(ulp_distance(rsqrt_naive(x), ref), 1U) << x;
        ASSERT_LE(ulp_distance(rsqrt_compensated(x), ref), 1U) << x;
        ASSERT_EQ(rsqrt_modified(x), ref) << x;
    }
}

TEST(RsqrtKernels, NewtonStepUndercompensates) {
    support::Inputs in(43);
    const DyadicRational one = DyadicRational::from_int(1);
    for (int i = 0; i < 100000; ++i) {
        const double x = in.uniform(0.5, 2.0);
        const double y = std::sqrt(1.0 / x);
        const DyadicRational dx = dyadic(x);
        const DyadicRational dy = dyadic(y);
        const DyadicRational residual = one - dx * dy * dy;
        if (residual.is_zero()) {
            continue;
        }
        const DyadicRational corrected = dy * (one + residual.scaled(-1));
        ASSERT_TRUE(dx * corrected * corrected < one) << x;
    }
}

TEST(RsqrtKernels, PowersOfFourAreExact) {
    for (int k = -255; k <= 255; ++k) {
        const double x = std::ldexp(1.0, 2 * k);
        for (const auto v : variants) {
            ASSERT_EQ(rsqrt_kernel(x, v), std::ldexp(1.0, -k)) << k;
        }
    }
}

TEST(RsqrtModified, MonotoneOnAdjacentInputs) {
    support::Inputs in(44);
    for (int i = 0; i < 100000; ++i) {
        const double x1 = in.uniform(0.5, 2.0);
        const double x2 = std::nextafter(x1, 4.0);
        ASSERT_GE(rsqrt_modified(x1), rsqrt_modified(x2)) << x1;
    }
}

TEST(RsqrtFullRange, Examples) {
    EXPECT_EQ(rsqrt_full_range(0x1p-1040, RsqrtVariant::naive), 0x1p520);
    EXPECT_EQ(rsqrt_full_range(std::numeric_limits<double>::denorm_min(), RsqrtVariant::modified), 0x1p537);
    for (int k = -200; k <= 200; k += 7) {
        EXPECT_EQ(rsqrt_full_range(std::ldexp(one_minus_2u, 2 * k), RsqrtVariant::modified), std::ldexp(1.0 + 0x1p-52, -k));
    }
    EXPECT_THROW((void)rsqrt_full_range(0.0, RsqrtVariant::naive), domain_error);
    EXPECT_THROW((void)rsqrt_full_range(-2.0, RsqrtVariant::naive), domain_error);
    EXPECT_THROW((void)rsqrt_full_range(std::numeric_limits<double>::infinity(), RsqrtVariant::naive), domain_error);
    EXPECT_THROW((void)rsqrt_full_range(std::numeric_limits<double>::quiet_NaN(), RsqrtVariant::naive), domain_error);
}

TEST(RsqrtFullRange, ScaleEquivariantAndMatchesKernelInRange) {
    support::Inputs in(45);
    for (int i = 0; i < 50000; ++i) {
        const double x = in.uniform(0.5, 2.0);
        const int k = in.integer(-500, 500);
        const double scaled = std::ldexp(x, 2 * k);
        for (const auto v : variants) {
            ASSERT_EQ(rsqrt_full_range(scaled, v), std::ldexp(rsqrt_full_range(x, v), -k));
            if (in_kernel_range(scaled)) {
                ASSERT_EQ(rsqrt_full_range(scaled, v), rsqrt_kernel(scaled, v));
            }
        }
    }
}

TEST(RsqrtFullRange, ModifiedIsCorrectlyRoundedAcrossTheRange) {
    support::Inputs in(46);
    for (int i = 0; i < 50000; ++i) {
        const double x = in.positive_finite();
        ASSERT_EQ(rsqrt_full_range(x, RsqrtVariant::modified), rn_rsqrt_ref(x)) << x;
    }
}

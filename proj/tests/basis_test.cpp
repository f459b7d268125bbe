#include <gtest/gtest.h>

#include "support/oracle.hpp"
#include "support/properties.hpp"
#include "wmf/basis.hpp"

using namespace wmf;

TEST(Basis, FirstElements) {
    EXPECT_EQ(first_m_element(8, 2, 10).series, truncate(weight_raiser(8, 12), 10));
    EXPECT_EQ(first_m_element(8, 2, 10).order, -2);
    EXPECT_EQ(first_m_element(25, 2, 20).series, e2_25(20));
    EXPECT_EQ(first_m_element(25, 2, 20).order, -4);
    EXPECT_EQ(first_m_element(9, -2, 5).series.coefficient(-2), 1);
    EXPECT_EQ(first_s_element(8, 2, 10).order, 1);
    EXPECT_EQ(first_s_element(25, 2, 10).order, 1);
    EXPECT_EQ(first_s_element(25, 6, 30).order, -9);
}

TEST(Basis, Level8WeightZero) {
    QSeries f1 = f_element(8, 0, 1, 10).series;
    QSeries psi = hauptmodul(8, 10);
    EXPECT_EQ(f1, add(psi, QSeries::constant(4, 10)));
    EXPECT_EQ(a_coeff(8, 0, 1, 3), 2);
    EXPECT_EQ(truncate(f_element(8, 0, 0, 5).series, 5), QSeries::constant(1, 5));
}

TEST(Basis, DualElementExamples) {
    EXPECT_EQ(b_coeff(8, 2, 3, 1), -2);
    EXPECT_EQ(g_element(8, 2, 1, 10).series.coefficient(-1), 1);
    EXPECT_EQ(g_element(8, 2, 1, 10).series.coefficient(1), -4);
    EXPECT_EQ(b_coeff(8, 2, 1, 0), 0);
}

TEST(Basis, LevelOneIsFaberPolynomials) {
    // a(m, n) = sum_{d | gcd(m, n)} (m/d) c(mn/d^2)
    const Exponent M = 6, T = 12;
    oracle::Sparse j = oracle::j_function(M * T);
    for (Exponent m = 1; m <= M; ++m) {
        for (Exponent n = 1; n <= T; ++n) {
            mpq_class want = 0;
            for (Exponent d = 1; d <= std::min(m, n); ++d)
                if (m % d == 0 && n % d == 0) want += mpq_class(m / d) * j[m * n / (d * d)];
            EXPECT_EQ(a_coeff(1, 0, m, n), want) << m << "," << n;
        }
    }
}

TEST(Basis, LowerLevelsRejectOtherWeights) {
    EXPECT_THROW(f_element(5, 2, 1, 5), UnsupportedLevel);
    EXPECT_THROW(g_element(4, 0, 1, 5), UnsupportedLevel);
    EXPECT_THROW(f_element(8, 1, 1, 5), std::invalid_argument);
    EXPECT_THROW(f_element(8, 4, -5, 5), std::invalid_argument);
    EXPECT_THROW(parse_family("X"), std::invalid_argument);
}

TEST(Basis, CacheExtendsTowers) {
    BasisCache cache;
    auto small = cache.tower({9, 0, Family::M}, 3, 10);
    auto same = cache.tower({9, 0, Family::M}, 2, 8);
    EXPECT_EQ(small.get(), same.get());
    auto big = cache.tower({9, 0, Family::M}, 6, 20);
    EXPECT_GE(big->precision(), 20);
    EXPECT_EQ(truncate(big->element(3).series, 10), truncate(small->element(3).series, 10));
}

TEST(Basis, UniqueAtHigherPrecision) {
    // Building at a higher precision does not change the low coefficients.
    for (int level : {8, 9, 16, 25}) {
        BasisCache a, b;
        for (int k : {-4, 0, 2, 6}) {
            for (Family fam : {Family::M, Family::S}) {
                const TowerKey key{level, k, fam};
                const Exponent top = -gap_bound(key) + 8;
                auto lo = a.tower(key, top, 15);
                auto hi = b.tower(key, top, 45);
                for (Exponent m = lo->min_order(); m <= top; ++m)
                    ASSERT_EQ(truncate(hi->element(m).series, lo->precision()), truncate(lo->element(m).series, lo->precision()))
                        << level << " " << k << " " << m;
            }
        }
    }
}

TEST(Basis, WeightZeroElementsArePolynomialsInPsi) {
    // f_{0,m} psi lies in the span of f_{0,0..m+1}: check f_{0,2} = psi^2 + c1 psi + c0
    QSeries psi = hauptmodul(16, 30);
    QSeries f2 = f_element(16, 0, 2, 25).series;
    QSeries sq = mul(psi, psi);
    Rational c1 = -sq.coefficient(-1);
    QSeries partial = add(sq, scale(psi, c1));
    Rational c0 = -partial.coefficient(0);
    EXPECT_EQ(truncate(add(partial, QSeries::constant(c0, partial.precision())), 25), f2);
}

TEST(BasisProperties, CanonicalGapAndIntegrality) {
    BasisCache cache;
    EXPECT_EQ(props::canonical_elements(8, 12, 30, cache), "");
}

TEST(BasisProperties, ThetaSpan) {
    BasisCache cache;
    EXPECT_EQ(props::theta_span(15, 40, cache), "");
}

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "support/oracle.hpp"
#include "wmf/levels.hpp"

using namespace wmf;

namespace {

void expect_terms(const QSeries& s, std::vector<std::pair<Exponent, long>> terms, Exponent through) {
    std::map<Exponent, long> want(terms.begin(), terms.end());
    for (Exponent n = s.valuation(); n <= through; ++n) {
        auto it = want.find(n);
        EXPECT_EQ(s.coefficient(n), it == want.end() ? 0 : it->second) << "q^" << n;
    }
}

std::vector<long> as_longs(const IntPolynomial& p) {
    std::vector<long> out;
    for (const auto& c : p.coefficients()) out.push_back(c.get_si());
    return out;
}

}  // namespace

TEST(Levels, Registry) {
    EXPECT_THROW(level_data(6), UnsupportedLevel);
    EXPECT_EQ(level_data(16).prime, 2);
    EXPECT_EQ(level_data(25).raiser_weight, 4);
    EXPECT_FALSE(level_data(1).hauptmodul_spec.has_value());
}

TEST(Levels, GapBounds) {
    const auto& d8 = level_data(8);
    EXPECT_EQ(d8.n0(4), 4);
    EXPECT_EQ(d8.n1(4), 1);
    EXPECT_EQ(level_data(16).n0(-2), -4);
    EXPECT_EQ(level_data(16).n1(2), -1);
    EXPECT_EQ(level_data(25).n0(2), 4);
    EXPECT_EQ(level_data(25).n0(6), 14);
    EXPECT_EQ(level_data(25).n0(-2), -6);
    EXPECT_EQ(level_data(25).n1(2), -1);
    EXPECT_THROW(level_data(5).n0(2), UnsupportedLevel);
    EXPECT_THROW(d8.n0(3), std::invalid_argument);
}

TEST(Levels, GapBoundsAreDual) {
    for (int n : {8, 9, 16, 25})
        for (int k = -12; k <= 12; k += 2) EXPECT_EQ(level_data(n).n0(k) + level_data(n).n1(2 - k), -1);
}

TEST(Levels, HauptmodulExpansions) {
    expect_terms(hauptmodul(8, 3), {{-1, 1}, {0, -4}, {1, 4}, {3, 2}}, 3);
    expect_terms(hauptmodul(9, 5), {{-1, 1}, {0, -3}, {2, 5}, {5, -7}}, 5);
    EXPECT_EQ(hauptmodul(2, 2).coefficient(0), -24);
    EXPECT_EQ(hauptmodul(1, 1).coefficient(0), 744);
}

TEST(Levels, WeightRaisers) {
    expect_terms(weight_raiser(8, 10), {{2, 1}, {6, 4}, {10, 6}}, 10);
    expect_terms(weight_raiser(9, 8), {{2, 1}, {5, 2}, {8, 5}}, 8);
    expect_terms(weight_raiser(16, 20), {{4, 1}, {12, 4}, {20, 6}}, 20);
    expect_terms(weight_raiser(25, 25), {{10, 1}, {15, 2}, {20, 5}, {25, 10}}, 25);
    EXPECT_THROW(weight_raiser(4, 10), UnsupportedLevel);
}

TEST(Levels, Psi4PlusSixteenIsEtaQuotient) {
    // psi^(4) + 16 = eta(2z)^24 / (eta(z)^8 eta(4z)^16), which vanishes at 1/2
    QSeries lhs = add(hauptmodul(4, 40), QSeries::constant(16, 40));
    EXPECT_EQ(lhs, eta_quotient({{2, 24}, {1, -8}, {4, -16}}, 40));
}

TEST(Levels, CuspPolynomialsFromPrintedCuspValues) {
    using C = std::complex<double>;
    const double r3 = std::sqrt(3.0), r5 = std::sqrt(5.0);
    std::map<int, std::vector<C>> roots{
        {8, {0, -8, -4}},
        {9, {0, 3 * r3 * C(-r3, -1) / 2.0, 3 * r3 * C(-r3, 1) / 2.0}},
        {16, {0, -2, -4, C(-2, -2), C(-2, 2)}},
        {25,
         {0, r5 * C((1 - r5) / 4, -std::sqrt((5 + r5) / 8)), r5 * C((1 - r5) / 4, std::sqrt((5 + r5) / 8)),
          r5 * C((-1 - r5) / 4, -std::sqrt((5 - r5) / 8)), r5 * C((-1 - r5) / 4, std::sqrt((5 - r5) / 8))}},
    };
    for (const auto& [level, rs] : roots) {
        double err = 0;
        auto expected = oracle::poly_from_roots(rs, &err);
        EXPECT_LT(err, 1e-9) << level;
        EXPECT_EQ(as_longs(cusp_poly(level)), expected) << level;
        EXPECT_TRUE(cusp_poly(level).is_monic());
    }
    EXPECT_EQ(cusp_poly(25).to_string(), "t^5 + 5t^4 + 15t^3 + 25t^2 + 25t");
}

TEST(Levels, CuspPolynomialVanishesWhereExpected) {
    // psi^(8) C_8(psi^(8)) has no pole beyond q^-4 and C_8 is exactly t(t+4)(t+8)
    QSeries psi = hauptmodul(8, 20);
    QSeries c = evaluate(cusp_poly(8), psi);
    EXPECT_EQ(c.valuation(), -3);
    EXPECT_TRUE(c.is_integral());
}

TEST(Levels, E2OfLevel25) {
    QSeries e2 = e2_25(40);
    expect_terms(e2, {{4, 1}, {6, 1}, {9, 2}, {14, 3}, {16, 2}}, 16);
    EXPECT_EQ(e2.coefficient(5), 0);
    EXPECT_TRUE(e2.is_integral());
    // equals -theta(psi)/C_25(psi)
    QSeries psi = hauptmodul(25, 60);
    QSeries alt = negate(mul(theta(psi), invert(evaluate(cusp_poly(25), psi))));
    EXPECT_EQ(truncate(alt, 40), e2);
}

TEST(Levels, EchelonSortsAndNormalizes) {
    QSeries a = QSeries::from_coefficients(0, {Rational(2), Rational(2), Rational(0)}, 2);
    QSeries b = QSeries::from_coefficients(0, {Rational(1), Rational(0), Rational(1)}, 2);
    auto rows = echelon({a, b});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].valuation(), 0);
    EXPECT_EQ(rows[1].valuation(), 1);
    EXPECT_EQ(rows[1].leading_coefficient(), 1);
    EXPECT_EQ(rows[0].coefficient(1), 0);
}

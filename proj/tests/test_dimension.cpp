#include <gtest/gtest.h>

#include "grassharm/dimension.hpp"
#include "grassharm/verify/spin_oracle.hpp"
#include "oracles.hpp"

using namespace grassharm;

TEST(Phi, UnitSpacedFactors)
{
    EXPECT_EQ(phi(Rational(5), Rational(1)), Rational(4 * 5 * 6));
    EXPECT_EQ(phi(Rational(5, 2), Rational(1, 2)), Rational(2 * 3));
    EXPECT_EQ(phi(Rational(7), Rational(-1, 2)), Rational(1));
    EXPECT_EQ(phi(Rational(3), Rational(0)), Rational(3));
    EXPECT_THROW(phi(Rational(3), Rational(1, 3)), domain_error);
}

TEST(Dimension, TrivialWeightIsOne)
{
    for (int p = 1; p <= 5; ++p)
        for (int q = 1; q <= p; ++q) {
            const auto s = make_space(p, q);
            EXPECT_EQ(dimension(s, zero_weight(s)), 1);
        }
}

// d = 8 at (2,1), l = 0, m = (1): the adjoint representation of SU(3), from
// the Weyl formula at highest weight (1, 0, -1).
TEST(Dimension, FrozenWeylValues)
{
    const auto s21 = make_space(2, 1);
    EXPECT_EQ(dimension(s21, make_weight(s21, 0, {1})), 8);
    EXPECT_EQ(dimension(s21, make_weight(s21, 1, {0})), 3);
    EXPECT_EQ(dimension(s21, make_weight(s21, 0, {2})), 27);
    const auto s22 = make_space(2, 2);
    EXPECT_EQ(dimension(s22, make_weight(s22, 0, {1, 0})), 15);
    EXPECT_EQ(dimension(s22, make_weight(s22, 0, {1, 1})), 20);
    EXPECT_EQ(oracle::weyl_dimension({1, 0, -1}), 8);
    EXPECT_EQ(oracle::weyl_dimension({1, 1, -1, -1}), 20);
}

TEST(Dimension, RankOneMatchesSpinDimension)
{
    const auto s = make_space(1, 1);
    for (int l = -5; l <= 5; ++l)
        for (int m = 0; m <= 20; ++m) {
            const auto d = dimension(s, make_weight(s, l, {m}));
            EXPECT_EQ(d, 2 * m + std::abs(l) + 1);
            EXPECT_EQ(verify::spin_jx(2 * m + std::abs(l)).rows(), d.convert_to<long>());
        }
}

TEST(Dimension, AgreesWithWeylFormulaOnGrid)
{
    for (int p = 1; p <= 5; ++p)
        for (int q = 1; q <= p && p + q <= 6; ++q) {
            const auto s = make_space(p, q);
            for (int l = -3; l <= 3; ++l)
                for (const auto& w : enumerate_weights(s, l, 10)) {
                    const Rational d = dimension_rational(s, w);
                    ASSERT_EQ(denominator(d), 1);
                    ASSERT_GT(d, 0);
                    ASSERT_EQ(d, oracle::weyl_dimension(oracle::spherical_highest_weight(p, q, l, w.m)))
                        << "(" << p << "," << q << ") l=" << l << " m1=" << w.m1();
                }
        }
}

TEST(Dimension, BoundExamples)
{
    const auto s11 = make_space(1, 1);
    EXPECT_EQ(dimension_bound(s11, zero_weight(s11)), 1);
    EXPECT_LE(dimension(s11, zero_weight(s11)), dimension_bound(s11, zero_weight(s11)));
    const auto s21 = make_space(2, 1);
    EXPECT_EQ(dimension_bound(s21, make_weight(s21, 0, {3})), 64);
    const auto s22 = make_space(2, 2);
    EXPECT_EQ(dimension_bound(s22, make_weight(s22, 0, {2, 1})), 729);
}

// The power bound (m_1+1)^{q(2p-1)} does not hold on the whole lattice; these
// are exact counterexamples. dimension_envelope is the bound used instead.
TEST(Dimension, PowerBoundCounterexamples)
{
    const auto s21 = make_space(2, 1);
    EXPECT_GT(dimension(s21, make_weight(s21, 1, {0})), dimension_bound(s21, make_weight(s21, 1, {0})));
    const auto s11 = make_space(1, 1);
    EXPECT_GT(dimension(s11, make_weight(s11, 0, {3})), dimension_bound(s11, make_weight(s11, 0, {3})));
}

TEST(Dimension, PowerBoundHoldsForTrivialCharacterWhenKPositive)
{
    for (auto [p, q] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{3, 2}})
        for (const auto& w : enumerate_weights(make_space(p, q), 0, 10))
            EXPECT_LE(dimension(make_space(p, q), w), dimension_bound(make_space(p, q), w));
}

TEST(Dimension, EnvelopeBoundsEveryShell)
{
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= p && p + q <= 6; ++q) {
            const auto s = make_space(p, q);
            const int degree = dimension_degree(s);
            for (int l = -3; l <= 3; ++l) {
                double prev_ratio = std::numeric_limits<double>::infinity();
                for (int m1 = 0; m1 <= 12; ++m1) {
                    const Rational env = dimension_envelope(s, l, m1);
                    for (const auto& w : weight_shell(s, l, m1)) ASSERT_LE(dimension_rational(s, w), env);
                    if (m1 >= 1) {
                        const double ratio = env.convert_to<double>() / std::pow(m1, degree);
                        EXPECT_LE(ratio, prev_ratio * (1 + 1e-12));
                        prev_ratio = ratio;
                    }
                }
            }
        }
}

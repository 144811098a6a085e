#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "grassharm/measure.hpp"
#include "grassharm/unitary.hpp"
#include "oracles.hpp"

using namespace grassharm;

TEST(Rng, StreamsAreDeterministicAndDistinct)
{
    CounterRng a(StreamKey{1, 2, 3}), b(StreamKey{1, 2, 3}), c(StreamKey{1, 2, 4}), d(StreamKey{1, 3, 3});
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
    EXPECT_NE(x, d());
    CounterRng u(StreamKey{9, 0, 0});
    for (int i = 0; i < 10000; ++i) {
        const double v = u.uniform();
        ASSERT_GT(v, 0.0);
        ASSERT_LT(v, 1.0);
        ASSERT_LT(u.below(5), 5u);
    }
}

TEST(Haar, UnitaryColumns)
{
    for (int n : {1, 2, 3, 5}) {
        CounterRng rng(StreamKey{3, 0, static_cast<std::uint64_t>(n)});
        const CMatrix u = haar_unitary(n, rng);
        for (int j = 0; j < n; ++j) EXPECT_NEAR(u.col(j).norm(), 1.0, 1e-12);
        EXPECT_LT(unitarity_defect(u), 1e-12);
        const CMatrix su = haar_special_unitary(n, rng);
        EXPECT_NEAR(std::abs(su.determinant() - Complex(1.0)), 0.0, 1e-12);
    }
    CounterRng rng(StreamKey{3, 1, 0});
    EXPECT_THROW(haar_unitary(0, rng), domain_error);
}

TEST(Haar, SecondMomentOfEntry)
{
    const int n = 4;
    const auto est = monte_carlo(MCConfig{11, 0, 1}, 40000, [&](CounterRng& rng) {
        const CMatrix u = haar_unitary(n, rng);
        return SampleValue{Complex(std::norm(u(0, 0))), false};
    });
    EXPECT_NEAR(est.value.real(), 1.0 / n, 4 * est.std_error);
}

// One eigenvalue per matrix, chosen at random: its argument is uniform on
// (-pi, pi] for Haar U(n).
TEST(Haar, EigenvalueArgumentsPassKolmogorovSmirnov)
{
    const std::size_t samples = 100000;
    std::vector<double> args(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        CounterRng rng(StreamKey{5, 0, i});
        const CMatrix u = haar_unitary(3, rng);
        const Eigen::ComplexEigenSolver<CMatrix> eig(u, false);
        args[i] = std::arg(eig.eigenvalues()(static_cast<Eigen::Index>(rng.below(3))));
    }
    const double d = oracle::ks_uniform_statistic(args, -std::numbers::pi, std::numbers::pi);
    EXPECT_GT(oracle::ks_p_value(d, samples), 0.001) << "D = " << d;
}

TEST(HaarK, DeterminantAndBlocks)
{
    for (auto [p, q] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{3, 2}}) {
        const auto s = make_space(p, q);
        for (std::uint64_t i = 0; i < 50; ++i) {
            CounterRng rng(StreamKey{6, 0, i});
            const KElement k = haar_k(s, rng);
            EXPECT_NEAR(std::abs(k.a_block.determinant() * k.b_block.determinant() - Complex(1.0)), 0.0, 1e-12);
            EXPECT_LT(unitarity_defect(k.a_block), 1e-12);
            EXPECT_LT(unitarity_defect(k.b_block), 1e-12);
        }
    }
}

TEST(HaarK, RankOnePhaseIsUniform)
{
    const auto s = make_space(1, 1);
    std::vector<double> phases;
    for (std::uint64_t i = 0; i < 20000; ++i) {
        CounterRng rng(StreamKey{8, 0, i});
        phases.push_back(std::arg(haar_k(s, rng).b_block(0, 0)));
    }
    const double d = oracle::ks_uniform_statistic(phases, -std::numbers::pi, std::numbers::pi);
    EXPECT_GT(oracle::ks_p_value(d, phases.size()), 0.001);
}

// Left translation by a fixed k0 leaves the law of k unchanged; compare the
// mean of a non-invariant test polynomial under both.
TEST(HaarK, LeftTranslationInvariance)
{
    const auto s = make_space(3, 2);
    CounterRng fixed(StreamKey{99, 0, 0});
    const KElement k0 = haar_k(s, fixed);
    auto f = [](const KElement& k) {
        const Complex a = k.a_block(0, 0);
        return Complex(std::norm(a) * std::norm(a) + std::norm(k.a_block(0, 1) * k.b_block(1, 0)) +
                       (a * k.b_block.determinant()).real() + std::norm(k.b_block(0, 0) + k.b_block(1, 1)));
    };
    const auto plain = monte_carlo(MCConfig{12, 0, 1}, 100000, [&](CounterRng& rng) {
        return SampleValue{f(haar_k(s, rng)), false};
    });
    const auto shifted = monte_carlo(MCConfig{12, 1, 1}, 100000, [&](CounterRng& rng) {
        return SampleValue{f(k0 * haar_k(s, rng)), false};
    });
    EXPECT_LE(std::abs(plain.value - shifted.value), 4 * std::hypot(plain.std_error, shifted.std_error));
}

TEST(Character, Properties)
{
    const auto s = make_space(3, 2);
    for (std::uint64_t i = 0; i < 10000; ++i) {
        CounterRng rng(StreamKey{13, 0, i});
        const KElement a = haar_k(s, rng);
        const KElement b = haar_k(s, rng);
        const int l = static_cast<int>(rng.below(7)) - 3;
        ASSERT_NEAR(std::abs(chi_l(s, l, a * b) - chi_l(s, l, a) * chi_l(s, l, b)), 0.0, 1e-12);
        ASSERT_NEAR(std::abs(chi_l(s, l, a)), 1.0, 1e-12);
        ASSERT_NEAR(std::abs(chi_l(s, l, a) * chi_l(s, -l, a) - Complex(1.0)), 0.0, 1e-12);
        ASSERT_EQ(chi_l(s, 0, a), Complex(1.0));
    }
    EXPECT_EQ(chi_l(s, 5, KElement::identity(s)), Complex(1.0));
    EXPECT_EQ(integer_power(Complex(0.0, 1.0), -3), Complex(0.0, 1.0));
}

TEST(Torus, ClosedFormMatchesMatrixExponential)
{
    for (auto [p, q] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{3, 2}, std::pair{3, 3}}) {
        const auto s = make_space(p, q);
        for (std::uint64_t i = 0; i < 20; ++i) {
            CounterRng rng(StreamKey{14, 0, i});
            TorusPoint pt{std::vector<double>(static_cast<std::size_t>(q))};
            for (double& t : pt.t) t = 3.0 * rng.uniform() - 1.5;
            const CMatrix closed = torus_element(s, pt);
            const CMatrix generic = torus_generator(s, pt).exp();
            EXPECT_LT((closed - generic).cwiseAbs().maxCoeff(), 1e-10);
            EXPECT_NEAR(std::abs(closed.determinant() - Complex(1.0)), 0.0, 1e-12);
        }
    }
    const auto s11 = make_space(1, 1);
    const CMatrix g = torus_element(s11, TorusPoint{{0.4}});
    EXPECT_NEAR(std::abs(g(0, 1) - Complex(0.0, std::sin(0.4))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(g(0, 0) - std::cos(0.4)), 0.0, 1e-15);
    EXPECT_EQ(torus_element(make_space(3, 2), identity_point(2)), CMatrix::Identity(5, 5));
}

TEST(Kak, IdentityRoundTripAndBiInvariance)
{
    for (auto [p, q] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 2}, std::pair{4, 3}}) {
        const auto s = make_space(p, q);
        for (double t : kak_coordinates(s, CMatrix::Identity(s.n, s.n)).t) EXPECT_NEAR(t, 0.0, 1e-15);
        for (std::uint64_t i = 0; i < 1000; ++i) {
            CounterRng rng(StreamKey{15, static_cast<std::uint64_t>(10 * p + q), i});
            TorusPoint pt{std::vector<double>(static_cast<std::size_t>(q))};
            for (double& t : pt.t) t = std::numbers::pi / 2 * rng.uniform();
            std::sort(pt.t.begin(), pt.t.end(), std::greater<>());
            const CMatrix a = torus_element(s, pt);
            const auto back = kak_coordinates(s, a);
            const auto sandwich = kak_decompose(s, haar_k(s, rng).as_matrix() * a * haar_k(s, rng).as_matrix());
            const auto inverse = kak_coordinates(s, a.adjoint());
            for (int j = 0; j < q; ++j) {
                ASSERT_NEAR(back.t[static_cast<std::size_t>(j)], pt.t[static_cast<std::size_t>(j)], 1e-10);
                ASSERT_NEAR(sandwich.point.t[static_cast<std::size_t>(j)], pt.t[static_cast<std::size_t>(j)], 1e-9);
                ASSERT_NEAR(inverse.t[static_cast<std::size_t>(j)], pt.t[static_cast<std::size_t>(j)], 1e-10);
            }
        }
    }
}

// The phase of det(D) tracks chi_1(k1 k2) whenever the torus part is away
// from t = pi/2.
TEST(Kak, PhaseIsCharacterOfKFactors)
{
    const auto s = make_space(3, 2);
    for (std::uint64_t i = 0; i < 200; ++i) {
        CounterRng rng(StreamKey{16, 0, i});
        const KElement k1 = haar_k(s, rng), k2 = haar_k(s, rng);
        const CMatrix g = k1.as_matrix() * torus_element(s, TorusPoint{{1.2, 0.4}}) * k2.as_matrix();
        EXPECT_NEAR(std::abs(kak_decompose(s, g).phase - chi_l(1, k1 * k2)), 0.0, 1e-10);
    }
}

TEST(Kak, RejectsBadInput)
{
    const auto s = make_space(2, 1);
    EXPECT_THROW(kak_coordinates(s, CMatrix::Identity(4, 4)), domain_error);
    EXPECT_THROW(kak_coordinates(s, 2.0 * CMatrix::Identity(3, 3)), domain_error);
    EXPECT_THROW(UnitaryElement::checked(2.0 * CMatrix::Identity(3, 3)), domain_error);
    EXPECT_NO_THROW(UnitaryElement::checked(CMatrix::Identity(3, 3)));
}

TEST(Reorthonormalize, RestoresSpecialUnitary)
{
    CounterRng rng(StreamKey{17, 0, 0});
    CMatrix g = haar_special_unitary(5, rng);
    g(0, 0) += 1e-6;
    g(2, 3) -= Complex(0.0, 3e-7);
    reorthonormalize(g);
    EXPECT_LT(unitarity_defect(g), 1e-13);
    EXPECT_NEAR(std::abs(g.determinant() - Complex(1.0)), 0.0, 1e-13);
}

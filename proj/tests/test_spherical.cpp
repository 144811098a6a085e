#include <gtest/gtest.h>

#include <thread>

#include "grassharm/spherical.hpp"
#include "grassharm/verify/spin_oracle.hpp"
#include "oracles.hpp"

using namespace grassharm;

namespace {

std::vector<TorusPoint> random_grid(int q, int count, std::uint64_t seed)
{
    std::vector<TorusPoint> pts;
    for (int i = 0; i < count; ++i) {
        CounterRng rng(StreamKey{seed, 77, static_cast<std::uint64_t>(i)});
        TorusPoint pt{std::vector<double>(static_cast<std::size_t>(q))};
        for (double& t : pt.t) t = std::numbers::pi / 2.0 * rng.uniform();
        pts.push_back(pt);
    }
    return pts;
}

}  // namespace

TEST(TorusPoint, RegularityAndCanonicalForm)
{
    EXPECT_TRUE((TorusPoint{{0.3, 0.2}}).is_regular());
    EXPECT_FALSE((TorusPoint{{0.3, 0.3}}).is_regular());
    EXPECT_FALSE((TorusPoint{{0.0, 0.3}}).is_regular());
    EXPECT_FALSE((TorusPoint{{std::numbers::pi / 2}}).is_regular());
    const auto c = TorusPoint{{-0.2, 3.0, 0.5}}.canonical();
    ASSERT_EQ(c.rank(), 3u);
    EXPECT_NEAR(c.t[0], 0.5, 1e-15);
    EXPECT_NEAR(c.t[1], 0.2, 1e-15);
    EXPECT_NEAR(c.t[2], std::numbers::pi - 3.0, 1e-15);
}

TEST(Options, Validation)
{
    SphericalEvalOptions o;
    o.confluence_tolerance = 0.0;
    const auto s = make_space(2, 1);
    EXPECT_THROW(SphericalFunction(s, zero_weight(s), o), domain_error);
    SphericalEvalOptions cap;
    EXPECT_THROW(SphericalFunction(s, make_weight(s, 0, {301}), cap), domain_error);
}

// Just above the confluence switch the divided differences cancel to about
// eps / tolerance, so random points near coincidence see ~1e-11.
TEST(Spherical, TrivialWeightIsOne)
{
    for (auto [p, q] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{3, 2}, std::pair{3, 3}}) {
        const auto s = make_space(p, q);
        for (const auto& pt : random_grid(q, 20, 1)) EXPECT_NEAR(spherical_value(s, zero_weight(s), pt), 1.0, 1e-10);
    }
}

TEST(Spherical, RankOneClosedForms)
{
    const auto s = make_space(1, 1);
    EXPECT_NEAR(spherical_value(s, make_weight(s, 0, {1}), TorusPoint{{std::numbers::pi / 4}}), 0.0, 1e-14);
    for (double t : {0.1, 0.6, 1.2}) {
        EXPECT_NEAR(spherical_value(s, make_weight(s, 1, {0}), TorusPoint{{t}}), std::cos(t), 1e-14);
        EXPECT_NEAR(spherical_value(s, make_weight(s, 0, {1}), TorusPoint{{t}}), std::cos(2 * t), 1e-14);
        EXPECT_NEAR(normalized_block(1, s, 0, std::cos(2 * t)) / normalized_block(1, s, 0, 1.0), std::cos(2 * t),
                    1e-14);
    }
}

TEST(Spherical, AgreesWithSpinMatrices)
{
    const auto s = make_space(1, 1);
    for (int l = -3; l <= 3; ++l)
        for (int m = 0; m <= 8; ++m)
            for (int i = 0; i < 20; ++i) {
                const double t = (i + 0.5) * (std::numbers::pi / 2) / 20;
                const auto ref = verify::su2_spherical_reference(l, m, t);
                EXPECT_NEAR(ref.imag(), 0.0, 1e-12);
                EXPECT_NEAR(spherical_value(s, make_weight(s, l, {m}), TorusPoint{{t}}), ref.real(), 1e-10);
            }
}

TEST(Spherical, BoundedAndOneAtIdentity)
{
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= p && p + q <= 5; ++q) {
            const auto s = make_space(p, q);
            const auto grid = random_grid(q, 50, 2);
            for (int l = -3; l <= 3; ++l)
                for (const auto& w : enumerate_weights(s, l, 6)) {
                    const SphericalFunction psi(s, w);
                    EXPECT_NEAR(psi(identity_point(q)), 1.0, 1e-8);
                    for (const auto& pt : grid) ASSERT_LE(std::abs(psi(pt)), 1.0 + 1e-8);
                }
        }
}

TEST(Spherical, PermutationAndSignSymmetry)
{
    const auto s = make_space(4, 3);
    for (const auto& w : enumerate_weights(s, 2, 4)) {
        const SphericalFunction psi(s, w);
        for (const auto& pt : random_grid(3, 10, 3)) {
            const double base = psi(pt);
            TorusPoint perm{{pt.t[2], pt.t[0], pt.t[1]}};
            TorusPoint sign{{-pt.t[0], pt.t[1], -pt.t[2]}};
            EXPECT_NEAR(psi(perm), base, 1e-10);
            EXPECT_NEAR(psi(sign), base, 1e-10);
        }
    }
}

TEST(Spherical, ConfluenceContinuity)
{
    const auto s = make_space(3, 2);
    const double t0 = 0.6;
    for (const auto& w : enumerate_weights(s, 1, 5)) {
        const SphericalFunction psi(s, w);
        const double coincident = psi(TorusPoint{{t0, t0}});
        for (double eps : {1e-3, 1e-4, 1e-5}) {
            // cos 2t_1 - cos 2t_2 = 2 eps
            const double c = std::cos(2 * t0);
            const TorusPoint split{{0.5 * std::acos(c - eps), 0.5 * std::acos(c + eps)}};
            EXPECT_NEAR(psi(split), coincident, 50.0 * eps) << "eps " << eps;
        }
    }
}

TEST(Spherical, ConfluentAndGenericPathsAgreeAtTolerance)
{
    // Just above and just below the switching tolerance.
    const auto s = make_space(3, 3);
    const SphericalFunction psi(s, make_weight(s, 0, {3, 2, 1}));
    const double c = std::cos(2 * 0.4);
    const double a = psi(TorusPoint{{0.5 * std::acos(c - 0.6e-6), 0.5 * std::acos(c + 0.6e-6), 1.0}});
    const double b = psi(TorusPoint{{0.5 * std::acos(c - 0.4e-6), 0.5 * std::acos(c + 0.4e-6), 1.0}});
    EXPECT_NEAR(a, b, 1e-6);
}

TEST(Spherical, ClosedFormConstantDiffersOnlyByScale)
{
    const auto s = make_space(3, 2);
    SphericalEvalOptions closed;
    closed.normalization = NormalizationMode::closed_form_constant;
    for (const auto& w : enumerate_weights(s, 1, 3)) {
        const SphericalFunction a(s, w);
        const SphericalFunction b(s, w, closed);
        const TorusPoint pt{{0.9, 0.3}};
        EXPECT_NEAR(b(pt) / b.scale(), a(pt) / a.scale(), 1e-12 * std::max(1.0, std::abs(a(pt) / a.scale())));
    }
}

TEST(Gradient, Examples)
{
    const auto s = make_space(1, 1);
    const auto g = spherical_gradient(s, make_weight(s, 0, {1}), TorusPoint{{std::numbers::pi / 8}});
    EXPECT_NEAR(g[0], -std::sqrt(2.0), 1e-8);
    const auto s2 = make_space(3, 2);
    for (double v : spherical_gradient(s2, zero_weight(s2), TorusPoint{{0.7, 0.2}})) EXPECT_NEAR(v, 0.0, 1e-9);
    EXPECT_THROW(spherical_gradient(s2, zero_weight(s2), TorusPoint{{0.7, 0.7}}), domain_error);
}

TEST(Gradient, OddUnderReflection)
{
    const auto s = make_space(2, 2);
    const auto w = make_weight(s, 1, {2, 1});
    const auto g = spherical_gradient(s, w, TorusPoint{{0.9, 0.4}});
    // psi(t) = psi(-t) on every coordinate, so d/dt_j flips sign at -t_j.
    const SphericalFunction psi(s, w);
    const double h = 1e-5;
    const double mirrored = (psi(TorusPoint{{-0.9 + h, 0.4}}) - psi(TorusPoint{{-0.9 - h, 0.4}})) / (2 * h);
    EXPECT_NEAR(mirrored, -g[0], 1e-7);
}

TEST(Gradient, SecondOrderRichardson)
{
    const auto s = make_space(1, 1);
    const auto w = make_weight(s, 0, {3});
    const double t = 0.5;
    // psi = P_3(cos 2t) with P_3(x) = (5x^3 - 3x)/2
    const double x = std::cos(2 * t);
    const double truth = (15 * x * x - 3) / 2 * (-2 * std::sin(2 * t));
    const double e1 = std::abs(spherical_gradient(s, w, TorusPoint{{t}}, {}, 1e-2)[0] - truth);
    const double e2 = std::abs(spherical_gradient(s, w, TorusPoint{{t}}, {}, 5e-3)[0] - truth);
    EXPECT_NEAR(e1 / e2, 4.0, 0.2);
}

TEST(CalibrationCache, InitializesEachKeyOnce)
{
    CalibrationCache cache;
    const auto s = make_space(3, 2);
    const auto ws = enumerate_weights(s, 1, 4);
    std::vector<std::jthread> pool;
    for (int i = 0; i < 4; ++i)
        pool.emplace_back([&] {
            for (int rep = 0; rep < 5; ++rep)
                for (const auto& w : ws) cache.scale(s, w, {});
        });
    pool.clear();
    EXPECT_EQ(cache.initializations(), ws.size());
}

TEST(Decay, DiagonalSlopes)
{
    std::vector<int> ns;
    for (int n = 20; n <= 200; n += 10) ns.push_back(n);
    const auto f21 = decay_exponent_fit(make_space(2, 1), 0, TorusPoint{{0.7}}, ns);
    EXPECT_LE(f21.per_axis_slope, -1.5 + 0.15);
    EXPECT_DOUBLE_EQ(f21.predicted, -1.5);
    const auto f11 = decay_exponent_fit(make_space(1, 1), 0, TorusPoint{{0.7}}, ns);
    EXPECT_NEAR(f11.per_axis_slope, -0.5, 0.1);
    const auto f32 = decay_exponent_fit(make_space(3, 2), 0, TorusPoint{{1.1, 0.5}}, ns);
    EXPECT_LE(f32.per_axis_slope, -2.0 + 0.3);
}

TEST(Decay, BoundaryBranchAndConstantFamily)
{
    std::vector<int> ns;
    for (int n = 20; n <= 120; n += 10) ns.push_back(n);
    const auto fit = decay_exponent_fit(make_space(3, 2), 0, TorusPoint{{1.1, 0.5}}, ns, DecayBranch::boundary);
    EXPECT_DOUBLE_EQ(fit.predicted, -3.5);
    EXPECT_LT(fit.per_axis_slope, -1.0);
    // q = 1 boundary family is the constant weight m = 0.
    const auto flat = decay_exponent_fit(make_space(2, 1), 0, TorusPoint{{0.7}}, ns, DecayBranch::boundary);
    EXPECT_NEAR(flat.slope, 0.0, 1e-12);
}

TEST(Decay, RejectsBadInput)
{
    const auto s = make_space(2, 1);
    EXPECT_THROW(decay_exponent_fit(s, 0, TorusPoint{{0.7}}, {20, 30, 40}), domain_error);
    EXPECT_THROW(decay_exponent_fit(s, 0, TorusPoint{{0.7}}, {5, 30, 40, 50}), domain_error);
    EXPECT_THROW(decay_exponent_fit(s, 0, TorusPoint{{0.7}}, {20, 30, 30, 50}), domain_error);
    EXPECT_THROW(decay_exponent_fit(s, 0, TorusPoint{{0.0}}, {20, 30, 40, 50}), domain_error);
}

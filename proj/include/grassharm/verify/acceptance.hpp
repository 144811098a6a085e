#pragma once

// The acceptance suite behind `grassharm verify` and the acceptance test
// binary. The formatted report holds no timing, so it is byte-identical for
// a fixed seed whatever the worker count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "grassharm/dimension.hpp"
#include "grassharm/lattice.hpp"
#include "grassharm/measure.hpp"
#include "grassharm/sobolev.hpp"
#include "grassharm/spherical.hpp"
#include "grassharm/thresholds.hpp"
#include "grassharm/unitary.hpp"
#include "grassharm/verify/spin_oracle.hpp"

namespace grassharm::verify {

struct VerifyOptions {
    std::uint64_t seed = 7;
    int workers = 1;
    std::int64_t samples = 100000;
    int sobolev_cutoff = 300;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<std::string> details;
    double seconds = 0.0;        ///< wall time; never part of the report
    double runtime_limit = 0.0;  ///< seconds, 0 when none is stated
};

/// Progress hook: called with (criterion id, message).
using ProgressFn = std::function<void(int, const std::string&)>;

namespace detail {

inline std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

/// Generic regular point: angles in [margin, pi/2 - margin], descending,
/// pairwise separated by at least `gap`.
inline TorusPoint random_regular_point(int q, CounterRng& rng, double margin = 0.1, double gap = 0.05)
{
    const double lo = margin;
    const double hi = std::numbers::pi / 2.0 - margin;
    for (;;) {
        TorusPoint pt{std::vector<double>(static_cast<std::size_t>(q))};
        for (double& t : pt.t) t = lo + (hi - lo) * rng.uniform();
        std::sort(pt.t.begin(), pt.t.end(), std::greater<>());
        bool ok = true;
        for (std::size_t j = 1; j < pt.t.size(); ++j) ok = ok && pt.t[j - 1] - pt.t[j] >= gap;
        if (ok) return pt;
    }
}

/// Uniform canonical point pi/2 >= t_1 >= ... >= t_q >= 0.
inline TorusPoint random_canonical_point(int q, CounterRng& rng)
{
    TorusPoint pt{std::vector<double>(static_cast<std::size_t>(q))};
    for (double& t : pt.t) t = std::numbers::pi / 2.0 * rng.uniform();
    std::sort(pt.t.begin(), pt.t.end(), std::greater<>());
    return pt;
}

inline double max_abs_diff(const TorusPoint& a, const TorusPoint& b)
{
    double d = 0.0;
    for (std::size_t j = 0; j < a.rank(); ++j) d = std::max(d, std::abs(a.t[j] - b.t[j]));
    return d;
}

// Stream numbers, one block per criterion, so criteria never share draws.
constexpr std::uint64_t functional_stream = 1000;
constexpr std::uint64_t pairing_stream = 2000;
constexpr std::uint64_t consistency_stream = 3000;
constexpr std::uint64_t points_stream = 9000;
constexpr std::uint64_t kak_stream = 9500;

}  // namespace detail

inline CriterionResult criterion_su2_oracle()
{
    CriterionResult r{1, "SU(2) spin-matrix oracle"};
    r.runtime_limit = 5.0;
    const auto space = make_space(1, 1);
    double worst = 0.0, worst_imag = 0.0;
    int count = 0;
    for (int l = 0; l <= 2; ++l)
        for (int m = 0; m <= 5; ++m) {
            const SphericalFunction psi(space, make_weight(space, l, {m}));
            for (int i = 0; i < 20; ++i) {
                const double t = (i + 0.5) * (std::numbers::pi / 2.0) / 20.0;
                const auto ref = su2_spherical_reference(l, m, t);
                worst = std::max(worst, std::abs(psi(TorusPoint{{t}}) - ref.real()));
                worst_imag = std::max(worst_imag, std::abs(ref.imag()));
                ++count;
            }
        }
    r.pass = worst <= 1e-8;
    r.details.push_back("l in {0,1,2}, m <= 5, 20 angles: " + std::to_string(count) + " values");
    r.details.push_back("max |psi - oracle| = " + detail::fmt("%.3e", worst) + " (tol 1e-8)");
    r.details.push_back("max |imag(oracle)| = " + detail::fmt("%.3e", worst_imag));
    return r;
}

inline CriterionResult criterion_functional_equation(const VerifyOptions& o, const ProgressFn& progress = {})
{
    CriterionResult r{2, "functional equation over K"};
    r.runtime_limit = 600.0;
    struct Combo {
        int p, q, l;
        std::vector<int> m;
    };
    std::vector<Combo> combos;
    for (auto [p, q] : {std::pair{2, 1}, std::pair{2, 2}}) {
        const auto space = make_space(p, q);
        for (int l = 0; l <= 2; ++l)
            for (const auto& w : enumerate_weights(space, l, 3)) combos.push_back({p, q, l, w.m});
    }
    const std::size_t total = 60;
    int within = 0;
    double worst = 0.0;
    for (std::size_t c = 0; c < total; ++c) {
        const Combo& combo = combos[c % combos.size()];
        const auto space = make_space(combo.p, combo.q);
        CounterRng pick(StreamKey{o.seed, detail::points_stream, c});
        const TorusPoint u1 = detail::random_regular_point(space.q, pick);
        const TorusPoint u2 = detail::random_regular_point(space.q, pick);
        const MCConfig cfg{o.seed, detail::functional_stream + c, o.workers};
        const auto cmp = functional_equation_check(space, make_weight(space, combo.l, combo.m), u1, u2, o.samples, cfg);
        if (cmp.within(4.0)) ++within;
        if (cmp.estimate.std_error > 1e-12) worst = std::max(worst, cmp.sigmas);
        if (progress) progress(2, "config " + std::to_string(c + 1) + "/" + std::to_string(total));
    }
    const double rate = static_cast<double>(within) / static_cast<double>(total);
    r.pass = rate >= 0.95;
    r.details.push_back(std::to_string(combos.size()) + " (space, l, weight) combinations, " + std::to_string(total) +
                        " configurations, N = " + std::to_string(o.samples));
    r.details.push_back("within 4 stderr: " + std::to_string(within) + "/" + std::to_string(total) +
                        " (need >= 95%), worst " + detail::fmt("%.3f", worst) + " sigma (configurations with stderr > 1e-12)");
    return r;
}

inline CriterionResult criterion_pairing(const VerifyOptions& o, const ProgressFn& progress = {})
{
    CriterionResult r{3, "pairing identity for chi_l-orbital measures"};
    r.runtime_limit = 600.0;
    const auto space = make_space(2, 1);
    int total = 0, within = 0;
    double worst = 0.0;
    for (int rr = 1; rr <= 3; ++rr)
        for (int l = 0; l <= 1; ++l) {
            CounterRng pick(StreamKey{o.seed, detail::points_stream + 100, static_cast<std::uint64_t>(10 * rr + l)});
            OrbitalMeasureSpec spec{l, {}};
            for (int i = 0; i < rr; ++i) spec.points.push_back(detail::random_regular_point(space.q, pick));
            for (const auto& w : enumerate_weights(space, l, 3)) {
                const MCConfig cfg{o.seed, detail::pairing_stream + static_cast<std::uint64_t>(total), o.workers};
                const auto cmp = pairing_check(spec, space, w, o.samples, cfg);
                if (cmp.within(4.0)) ++within;
                worst = std::max(worst, cmp.sigmas);
                ++total;
                if (progress) progress(3, "config " + std::to_string(total) + "/24");
            }
        }
    r.pass = static_cast<double>(within) >= 0.95 * total;
    r.details.push_back("(2,1), r in {1,2,3}, l in {0,1}, m_1 <= 3: " + std::to_string(total) +
                        " configurations, N = " + std::to_string(o.samples));
    r.details.push_back("within 4 stderr: " + std::to_string(within) + "/" + std::to_string(total) +
                        " (need >= 95%), worst " + detail::fmt("%.3f", worst) + " sigma");
    return r;
}

inline CriterionResult criterion_consistency(const VerifyOptions& o, const ProgressFn& progress = {})
{
    CriterionResult r{4, "joint vs composed convolution sampling"};
    const auto space = make_space(2, 1);
    int total = 0, agree = 0;
    double worst = 0.0;
    for (int rr = 2; rr <= 3; ++rr) {
        CounterRng pick(StreamKey{o.seed, detail::points_stream + 200, static_cast<std::uint64_t>(rr)});
        OrbitalMeasureSpec spec{1, {}};
        for (int i = 0; i < rr; ++i) spec.points.push_back(detail::random_regular_point(space.q, pick));
        for (const auto& w : enumerate_weights(space, 1, 3)) {
            const MCConfig cfg{o.seed, detail::consistency_stream + static_cast<std::uint64_t>(total), o.workers};
            const auto rep = convolution_consistency_check(spec, space, w, o.samples, cfg);
            if (rep.agree(4.0)) ++agree;
            worst = std::max(worst, rep.sigmas);
            ++total;
            if (progress) progress(4, "config " + std::to_string(total) + "/8");
        }
    }
    r.pass = agree == total;
    r.details.push_back("(2,1), l = 1, r in {2,3}, m_1 <= 3, N = " + std::to_string(o.samples) + " per sampler");
    r.details.push_back("agree within 4 combined stderr: " + std::to_string(agree) + "/" + std::to_string(total) +
                        ", worst " + detail::fmt("%.3f", worst) + " sigma");
    return r;
}

inline CriterionResult criterion_dimension()
{
    CriterionResult r{5, "dimension formula"};
    r.runtime_limit = 5.0;
    int checked = 0, non_integer = 0, rank_one_mismatch = 0, bound_violations = 0, bound_checked = 0;
    std::string first_violation;
    auto check_bound = [&](const GrassmannParams& space, const SphericalWeight& w, const Rational& d) {
        ++bound_checked;
        if (d > Rational(dimension_bound(space, w))) {
            ++bound_violations;
            if (first_violation.empty()) {
                std::ostringstream os;
                os << "(" << space.p << "," << space.q << ") l=" << w.l << " m=(";
                for (std::size_t i = 0; i < w.m.size(); ++i) os << (i ? "," : "") << w.m[i];
                os << "): d = " << d << " > " << dimension_bound(space, w);
                first_violation = os.str();
            }
        }
    };
    for (auto [p, q] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 2}, std::pair{3, 1}}) {
        const auto space = make_space(p, q);
        for (int l = -3; l <= 3; ++l)
            for (const auto& w : enumerate_weights(space, l, 10)) {
                const Rational d = dimension_rational(space, w);
                ++checked;
                if (denominator(d) != 1 || d <= 0) ++non_integer;
                check_bound(space, w, d);
            }
    }
    const auto rank_one = make_space(1, 1);
    for (int l = -3; l <= 3; ++l)
        for (const auto& w : enumerate_weights(rank_one, l, 10)) {
            const Rational d = dimension_rational(rank_one, w);
            if (d != Rational(2 * w.m1() + std::abs(l) + 1)) ++rank_one_mismatch;
            check_bound(rank_one, w, d);
        }
    r.pass = non_integer == 0 && rank_one_mismatch == 0 && bound_violations == 0;
    r.details.push_back("positive integers: " + std::to_string(checked - non_integer) + "/" + std::to_string(checked) +
                        " weights on (2,1),(2,2),(3,2),(3,1), |l| <= 3, m_1 <= 10");
    r.details.push_back("(1,1) equals 2m+|l|+1: " + std::string(rank_one_mismatch == 0 ? "yes" : "no") + " (" +
                        std::to_string(rank_one_mismatch) + " mismatches)");
    r.details.push_back("d <= (m_1+1)^{q(2p-1)}: " + std::to_string(bound_violations) + " violations out of " +
                        std::to_string(bound_checked));
    if (!first_violation.empty()) r.details.push_back("first violation " + first_violation);
    return r;
}

inline CriterionResult criterion_decay()
{
    CriterionResult r{6, "decay of spherical functions along the diagonal"};
    std::vector<int> ns;
    for (int n = 20; n <= 200; n += 10) ns.push_back(n);
    const TorusPoint t{{0.7}};
    const auto fit21 = decay_exponent_fit(make_space(2, 1), 0, t, ns);
    const auto fit11 = decay_exponent_fit(make_space(1, 1), 0, t, ns);
    const bool ok21 = fit21.per_axis_slope <= -1.5 + 0.15;
    const bool ok11 = fit11.per_axis_slope <= -0.5 + 0.1;
    r.pass = ok21 && ok11;
    r.details.push_back("t = 0.7, n in [20, 200] step 10, windowed envelope fit");
    r.details.push_back("(2,1): per-axis slope " + detail::fmt("%.4f", fit21.per_axis_slope) + " (need <= -1.35)");
    r.details.push_back("(1,1): per-axis slope " + detail::fmt("%.4f", fit11.per_axis_slope) + " (need <= -0.4)");
    return r;
}

inline CriterionResult criterion_thresholds(const VerifyOptions& o)
{
    CriterionResult r{7, "smoothness thresholds and Sobolev certification"};
    r.runtime_limit = 600.0;
    struct Row {
        int p, q, nu;
        std::int64_t expected;
    };
    bool table_ok = true;
    for (const Row& row : {Row{1, 1, 1, 8}, Row{2, 1, 1, 5}, Row{2, 2, 2, 14}}) {
        const auto got = smoothness_threshold(make_space(row.p, row.q), row.nu);
        table_ok = table_ok && got == row.expected;
        r.details.push_back("C(" + std::to_string(row.p) + "," + std::to_string(row.q) + "," +
                            std::to_string(row.nu) + ") = " + std::to_string(got) + " (expected " +
                            std::to_string(row.expected) + ")");
    }
    const auto space = make_space(2, 1);
    CounterRng pick(StreamKey{o.seed, detail::points_stream + 300, 0});
    OrbitalMeasureSpec spec{0, {}};
    for (int i = 0; i < 5; ++i) spec.points.push_back(detail::random_regular_point(space.q, pick));
    const double s = 1.0 + 0.5 * (space.n * space.n - 1) + 0.01;
    SeriesOptions so;
    so.workers = o.workers;
    const auto rep = sobolev_partial_sums(space, spec, s, o.sobolev_cutoff, so);
    r.pass = table_ok && rep.converged;
    r.details.push_back("(2,1), r = 5, s = " + detail::fmt("%.2f", s) + ", cutoff " + std::to_string(rep.cutoff) +
                        ": sum " + detail::fmt("%.6e", rep.final_sum()) + ", tail bound " +
                        detail::fmt("%.6e", rep.tail_bound) + ", ratio " +
                        detail::fmt("%.3e", rep.tail_bound / rep.final_sum()) + " (need < 1e-3)");
    r.details.push_back("summand decay exponent gamma = " + detail::fmt("%.4f", rep.decay_exponent) +
                        (rep.converged ? ", certified" : ", not certified"));
    return r;
}

inline CriterionResult criterion_kak(const VerifyOptions& o)
{
    CriterionResult r{8, "KAK round trip and K-bi-invariance"};
    double worst_round = 0.0, worst_sandwich = 0.0;
    std::vector<std::pair<int, int>> spaces{{2, 1}, {2, 2}, {3, 2}};
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto [p, q] = spaces[i % spaces.size()];
        const auto space = make_space(p, q);
        CounterRng rng(StreamKey{o.seed, detail::kak_stream, i});
        const TorusPoint pt = detail::random_canonical_point(space.q, rng);
        const CMatrix a = torus_element(space, pt);
        worst_round = std::max(worst_round, detail::max_abs_diff(kak_coordinates(space, a), pt));
        const KElement k1 = haar_k(space, rng);
        const KElement k2 = haar_k(space, rng);
        const CMatrix g = k1.as_matrix() * a * k2.as_matrix();
        worst_sandwich = std::max(worst_sandwich, detail::max_abs_diff(kak_coordinates(space, g), pt));
    }
    r.pass = worst_round <= 1e-10 && worst_sandwich <= 1e-9;
    r.details.push_back("1000 canonical points over (2,1),(2,2),(3,2)");
    r.details.push_back("round trip max error " + detail::fmt("%.3e", worst_round) + " (tol 1e-10)");
    r.details.push_back("k1 a k2 max error " + detail::fmt("%.3e", worst_sandwich) + " (tol 1e-9)");
    return r;
}

/// Runs criteria 1 to 8 in order.
inline std::vector<CriterionResult> run_acceptance(const VerifyOptions& o, const ProgressFn& progress = {})
{
    std::vector<CriterionResult> out;
    auto timed = [&](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r = fn();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (progress) progress(r.id, "done");
        out.push_back(std::move(r));
    };
    timed([&] { return criterion_su2_oracle(); });
    timed([&] { return criterion_functional_equation(o, progress); });
    timed([&] { return criterion_pairing(o, progress); });
    timed([&] { return criterion_consistency(o, progress); });
    timed([&] { return criterion_dimension(); });
    timed([&] { return criterion_decay(); });
    timed([&] { return criterion_thresholds(o); });
    timed([&] { return criterion_kak(o); });
    return out;
}

inline std::string format_report(const std::vector<CriterionResult>& results, const VerifyOptions& o)
{
    std::ostringstream os;
    os << "grassharm acceptance report (seed " << o.seed << ", N = " << o.samples << ")\n";
    int passed = 0;
    for (const auto& r : results) {
        os << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << '\n';
        for (const auto& d : r.details) os << "    " << d << '\n';
        passed += r.pass ? 1 : 0;
    }
    os << passed << "/" << results.size() << " criteria passed\n";
    return os.str();
}

}  // namespace grassharm::verify

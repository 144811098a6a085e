#pragma once

// Monte Carlo integration against chi_l-orbital measures and their
// convolutions, and statistical checks of the identities they satisfy.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "grassharm/error.hpp"
#include "grassharm/lattice.hpp"
#include "grassharm/parallel.hpp"
#include "grassharm/rng.hpp"
#include "grassharm/spherical.hpp"
#include "grassharm/torus.hpp"
#include "grassharm/unitary.hpp"

namespace grassharm {

/// chi_l-orbital measure mu_{a_1, ..., a_r, chi_l}, with each a_i given by a
/// regular torus representative.
struct OrbitalMeasureSpec {
    int l = 0;
    std::vector<TorusPoint> points;

    int r() const { return static_cast<int>(points.size()); }

    void validate(const GrassmannParams& space) const
    {
        if (points.empty()) throw domain_error("orbital measure needs at least one point");
        for (const auto& pt : points) {
            if (pt.rank() != static_cast<std::size_t>(space.q))
                throw domain_error("orbital measure point rank does not match q");
            if (!pt.is_regular()) throw domain_error("orbital measure points must be regular torus points");
        }
    }
};

struct MCEstimate {
    Complex value{0.0, 0.0};
    double std_error = 0.0;  ///< sqrt((Var re + Var im) / N)
    std::int64_t samples = 0;
    std::int64_t drift_corrections = 0;  ///< products re-orthonormalized during sampling
};

/// Sampling controls shared by every Monte Carlo routine.
struct MCConfig {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    int workers = 1;
    std::int64_t chunk = 4096;
};

/// Estimate compared against a deterministic reference.
struct MCComparison {
    MCEstimate estimate;
    Complex reference{0.0, 0.0};
    double sigmas = 0.0;  ///< |estimate - reference| / std_error
    bool within(double k, double floor = 1e-12) const
    {
        return std::abs(estimate.value - reference) <= k * estimate.std_error + floor;
    }
};

namespace detail {

inline double sigma_distance(Complex diff, double std_error)
{
    const double d = std::abs(diff);
    if (std_error > 0.0) return d / std_error;
    return d <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

struct ChunkSums {
    double re = 0.0, im = 0.0, re2 = 0.0, im2 = 0.0;
    std::int64_t count = 0;
    std::int64_t drift = 0;
};

}  // namespace detail

/// Result of one Monte Carlo draw.
struct SampleValue {
    Complex value;
    bool drift_corrected = false;
};

/// Averages `draw(rng)` over `samples` draws. Sample i always uses the stream
/// (seed, stream, i) and chunk partial sums are merged in chunk order, so the
/// result is bit-identical for any number of workers.
template <typename Draw>
MCEstimate monte_carlo(const MCConfig& cfg, std::int64_t samples, Draw&& draw)
{
    if (samples < 2) throw domain_error("monte_carlo: need at least 2 samples");
    const std::int64_t chunk = std::max<std::int64_t>(1, cfg.chunk);
    const std::int64_t chunks = (samples + chunk - 1) / chunk;
    std::vector<detail::ChunkSums> partial(static_cast<std::size_t>(chunks));

    auto run_chunk = [&](std::int64_t c) {
        detail::ChunkSums s;
        const std::int64_t begin = c * chunk;
        const std::int64_t end = std::min(samples, begin + chunk);
        for (std::int64_t i = begin; i < end; ++i) {
            CounterRng rng(StreamKey{cfg.seed, cfg.stream, static_cast<std::uint64_t>(i)});
            const SampleValue v = draw(rng);
            s.re += v.value.real();
            s.im += v.value.imag();
            s.re2 += v.value.real() * v.value.real();
            s.im2 += v.value.imag() * v.value.imag();
            s.drift += v.drift_corrected ? 1 : 0;
            ++s.count;
        }
        partial[static_cast<std::size_t>(c)] = s;
    };

    parallel_for(chunks, cfg.workers, run_chunk);

    detail::ChunkSums total;
    for (const auto& s : partial) {
        total.re += s.re;
        total.im += s.im;
        total.re2 += s.re2;
        total.im2 += s.im2;
        total.count += s.count;
        total.drift += s.drift;
    }
    const auto n = static_cast<double>(total.count);
    MCEstimate est;
    est.samples = total.count;
    est.drift_corrections = total.drift;
    const double mre = total.re / n;
    const double mim = total.im / n;
    est.value = {mre, mim};
    const double var = std::max(0.0, (total.re2 - n * mre * mre) + (total.im2 - n * mim * mim)) / (n - 1.0);
    est.std_error = std::sqrt(var / n);
    return est;
}

/// psi_{lambda,l}(g) for an arbitrary g in SU(p+q): the torus value at the
/// KAK coordinates twisted by chi_l(k1 k2)^{-1} = conj(phase)^l.
inline Complex spherical_at(const SphericalFunction& psi, const KakCoordinates& kak)
{
    const double torus_value = psi(kak.point);
    return torus_value * integer_power(std::conj(kak.phase), psi.weight().l);
}

inline Complex spherical_at(const SphericalFunction& psi, const CMatrix& g)
{
    return spherical_at(psi, kak_decompose(psi.space(), g));
}

namespace detail {

inline bool enforce_unitary(CMatrix& g, double tol = 1e-9)
{
    const bool drifted = unitarity_defect(g) > tol || std::abs(g.determinant() - Complex(1.0)) > tol;
    if (drifted) reorthonormalize(g);
    return drifted;
}

inline std::vector<CMatrix> torus_representatives(const GrassmannParams& space, const OrbitalMeasureSpec& spec)
{
    std::vector<CMatrix> reps;
    reps.reserve(spec.points.size());
    for (const auto& pt : spec.points) reps.push_back(torus_element(space, pt));
    return reps;
}

}  // namespace detail

/// One draw (g, weight) from the orbital measure: g = k_1 a_1 k_2 ... a_r k_{r+1}
/// with k_i i.i.d. Haar on K and weight chi_l(k_1 ... k_{r+1})^{-1}.
struct OrbitalSample {
    CMatrix g;
    Complex weight{1.0, 0.0};
    bool drift_corrected = false;
};

inline OrbitalSample orbital_sample(const OrbitalMeasureSpec& spec, const GrassmannParams& space,
                                    const std::vector<CMatrix>& reps, CounterRng& rng)
{
    OrbitalSample s;
    KElement k = haar_k(space, rng);
    Complex det_b = k.b_block.determinant();
    s.g = k.as_matrix();
    for (const auto& a : reps) {
        k = haar_k(space, rng);
        det_b *= k.b_block.determinant();
        s.g = (s.g * a * k.as_matrix()).eval();
    }
    s.weight = integer_power(det_b, -spec.l);
    s.drift_corrected = detail::enforce_unitary(s.g);
    return s;
}

inline OrbitalSample orbital_sample(const OrbitalMeasureSpec& spec, const GrassmannParams& space, CounterRng& rng)
{
    spec.validate(space);
    return orbital_sample(spec, space, detail::torus_representatives(space, spec), rng);
}

/// Composition sampling: independent factors g_i = k a_i k' multiplied
/// together with their weights multiplied.
inline OrbitalSample composed_orbital_sample(const OrbitalMeasureSpec& spec, const GrassmannParams& space,
                                             const std::vector<CMatrix>& reps, CounterRng& rng)
{
    OrbitalSample s;
    s.g = CMatrix::Identity(space.n, space.n);
    Complex det_b(1.0);
    for (const auto& a : reps) {
        const KElement left = haar_k(space, rng);
        const KElement right = haar_k(space, rng);
        det_b *= left.b_block.determinant() * right.b_block.determinant();
        s.g = (s.g * left.as_matrix() * a * right.as_matrix()).eval();
    }
    s.weight = integer_power(det_b, -spec.l);
    s.drift_corrected = detail::enforce_unitary(s.g);
    return s;
}

/// prod_i psi_{lambda,l}(a_i^{-1}); on torus representatives a_i^{-1} has the
/// same coordinates as a_i.
inline double pairing_reference(const OrbitalMeasureSpec& spec, const GrassmannParams& space,
                                const SphericalWeight& w, const SphericalEvalOptions& opts = {})
{
    const SphericalFunction psi(space, w, opts);
    double ref = 1.0;
    for (const auto& pt : spec.points) ref *= psi(pt);
    return ref;
}

/// Estimate of the integral of conj(psi_{lambda,l}) against mu_{a_1..a_r,chi_l}.
inline MCEstimate pairing_estimate(const OrbitalMeasureSpec& spec, const GrassmannParams& space,
                                   const SphericalWeight& w, std::int64_t samples, const MCConfig& cfg,
                                   const SphericalEvalOptions& opts = {})
{
    spec.validate(space);
    if (w.l != spec.l) throw domain_error("pairing_estimate: weight and measure use different characters");
    if (samples < 1000) throw domain_error("pairing_estimate: need at least 1000 samples");
    const SphericalFunction psi(space, w, opts);
    const auto reps = detail::torus_representatives(space, spec);
    return monte_carlo(cfg, samples, [&](CounterRng& rng) {
        const OrbitalSample s = orbital_sample(spec, space, reps, rng);
        return SampleValue{std::conj(spherical_at(psi, s.g)) * s.weight, s.drift_corrected};
    });
}

inline MCComparison pairing_check(const OrbitalMeasureSpec& spec, const GrassmannParams& space,
                                  const SphericalWeight& w, std::int64_t samples, const MCConfig& cfg,
                                  const SphericalEvalOptions& opts = {})
{
    MCComparison out;
    out.estimate = pairing_estimate(spec, space, w, samples, cfg, opts);
    out.reference = pairing_reference(spec, space, w, opts);
    out.sigmas = detail::sigma_distance(out.estimate.value - out.reference, out.estimate.std_error);
    return out;
}

/// Estimate of the residual int_K psi(u1 k u2) chi_l(k) dk - psi(u1) psi(u2).
/// `reference` of the returned comparison is 0.
inline MCComparison functional_equation_check(const GrassmannParams& space, const SphericalWeight& w,
                                              const TorusPoint& u1, const TorusPoint& u2, std::int64_t samples,
                                              const MCConfig& cfg, const SphericalEvalOptions& opts = {})
{
    if (samples < 1000) throw domain_error("functional_equation_check: need at least 1000 samples");
    const SphericalFunction psi(space, w, opts);
    const CMatrix g1 = torus_element(space, u1);
    const CMatrix g2 = torus_element(space, u2);
    const double product = psi(u1) * psi(u2);
    MCComparison out;
    out.estimate = monte_carlo(cfg, samples, [&](CounterRng& rng) {
        const KElement k = haar_k(space, rng);
        CMatrix g = g1 * k.as_matrix() * g2;
        const bool drifted = detail::enforce_unitary(g);
        return SampleValue{spherical_at(psi, g) * chi_l(w.l, k) - product, drifted};
    });
    out.reference = 0.0;
    out.sigmas = detail::sigma_distance(out.estimate.value, out.estimate.std_error);
    return out;
}

struct ConsistencyReport {
    MCEstimate joint;
    MCEstimate composed;
    double combined_std_error = 0.0;
    double sigmas = 0.0;
    bool agree(double k, double floor = 1e-12) const
    {
        return std::abs(joint.value - composed.value) <= k * combined_std_error + floor;
    }
};

/// Joint sampling (one chain of r+1 K-draws) against composition of r
/// independent single-factor draws, both paired with conj(psi).
inline ConsistencyReport convolution_consistency_check(const OrbitalMeasureSpec& spec, const GrassmannParams& space,
                                                       const SphericalWeight& w, std::int64_t samples,
                                                       const MCConfig& cfg, const SphericalEvalOptions& opts = {})
{
    spec.validate(space);
    if (spec.r() < 2) throw domain_error("convolution_consistency_check needs r >= 2");
    const SphericalFunction psi(space, w, opts);
    const auto reps = detail::torus_representatives(space, spec);
    ConsistencyReport out;
    MCConfig joint_cfg = cfg;
    joint_cfg.stream = cfg.stream * 2;
    MCConfig composed_cfg = cfg;
    composed_cfg.stream = cfg.stream * 2 + 1;
    out.joint = monte_carlo(joint_cfg, samples, [&](CounterRng& rng) {
        const OrbitalSample s = orbital_sample(spec, space, reps, rng);
        return SampleValue{std::conj(spherical_at(psi, s.g)) * s.weight, s.drift_corrected};
    });
    out.composed = monte_carlo(composed_cfg, samples, [&](CounterRng& rng) {
        const OrbitalSample s = composed_orbital_sample(spec, space, reps, rng);
        return SampleValue{std::conj(spherical_at(psi, s.g)) * s.weight, s.drift_corrected};
    });
    out.combined_std_error = std::hypot(out.joint.std_error, out.composed.std_error);
    out.sigmas = detail::sigma_distance(out.joint.value - out.composed.value, out.combined_std_error);
    return out;
}

/// Total mass E[weight] of the orbital measure: 1 for l = 0 and 0 otherwise.
inline MCEstimate total_mass_estimate(const OrbitalMeasureSpec& spec, const GrassmannParams& space,
                                      std::int64_t samples, const MCConfig& cfg)
{
    spec.validate(space);
    const auto reps = detail::torus_representatives(space, spec);
    return monte_carlo(cfg, samples, [&](CounterRng& rng) {
        const OrbitalSample s = orbital_sample(spec, space, reps, rng);
        return SampleValue{s.weight, s.drift_corrected};
    });
}

/// Haar average over SU(p+q) of f(g).
template <typename Integrand>
MCEstimate haar_expectation(const GrassmannParams& space, std::int64_t samples, const MCConfig& cfg, Integrand&& f)
{
    return monte_carlo(cfg, samples, [&](CounterRng& rng) {
        const CMatrix g = haar_special_unitary(space.n, rng);
        return SampleValue{f(g), false};
    });
}

}  // namespace grassharm

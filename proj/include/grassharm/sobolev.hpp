#pragma once

// Sobolev norms of convolutions of chi_l-orbital measures and Plancherel
// synthesis of their densities.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "grassharm/dimension.hpp"
#include "grassharm/error.hpp"
#include "grassharm/lattice.hpp"
#include "grassharm/measure.hpp"
#include "grassharm/parallel.hpp"
#include "grassharm/spherical.hpp"
#include "grassharm/thresholds.hpp"
#include "grassharm/unitary.hpp"

namespace grassharm {

struct SeriesOptions {
    SphericalEvalOptions eval;
    std::optional<double> killing_scale;  ///< defaults to 4n
    int workers = 1;
    int fit_window = 20;            ///< weights used to estimate the decay constants
    double certify_ratio = 1e-3;    ///< converged when tail_bound < ratio * final sum
};

struct SeriesReport {
    std::vector<double> partial_sums;  ///< index = m_1 cutoff
    double tail_bound = std::numeric_limits<double>::infinity();
    bool converged = false;
    int cutoff = 0;
    double s = 0.0;
    double killing_scale = 0.0;
    double decay_exponent = 0.0;   ///< gamma: summands over the tail shell m decay like m^{-gamma}
    std::vector<double> decay_constants;  ///< per point, max over both strata

    double final_sum() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
};

/// One term d_lambda (1 + kappa_lambda)^s prod_i |psi_{lambda,l}(a_i)|^2.
inline double summand(const GrassmannParams& space, const OrbitalMeasureSpec& spec, const SphericalWeight& w,
                      double s, const SeriesOptions& opts = {})
{
    const SphericalFunction psi(space, w, opts.eval);
    double product = 1.0;
    for (const auto& pt : spec.points) {
        const double v = psi(pt);
        product *= v * v;
    }
    const double kappa = casimir(space, w, opts.killing_scale);
    return dimension_as_double(space, w) * std::pow(1.0 + kappa, s) * product;
}

namespace detail {

/// |psi| * prod_j n_j^{e} for the interior stratum (m_q > 0), or
/// |psi| * prod_{j<q} n_j^{e'} for the boundary stratum (m_q = 0).
inline double decay_normalized(const GrassmannParams& space, const SphericalWeight& w, double abs_psi)
{
    const bool interior = w.m.back() > 0;
    const double e = interior ? 0.5 * (2 * space.p - space.q) : 0.5 * (2 * space.p - space.q + 3);
    const std::size_t used = interior ? w.spectral_n.size() : w.spectral_n.size() - 1;
    double scaled = abs_psi;
    for (std::size_t j = 0; j < used; ++j) scaled *= std::pow(static_cast<double>(w.spectral_n[j]), e);
    return scaled;
}

}  // namespace detail

/// Cumulative sums of the Sobolev series over m_1 cutoffs 0..m1_max with a
/// bound on the discarded tail m_1 > m1_max.
///
/// Tail bound: on the shell m_1 = m the spherical values obey
/// |psi(a_i)| <= C_i m^{-(2p-q)/2}, with C_i the largest normalized value over
/// the last `fit_window` weights of each stratum; d_lambda is bounded by the
/// shell envelope, 1 + kappa by its shell maximum, and the shell holds at most
/// (m+1)^{q-1} weights. Every factor is A m^{power} with A fixed by m1_max + 1,
/// so the tail is at most A M^{1-gamma}/(gamma-1) for gamma > 1.
inline SeriesReport sobolev_partial_sums(const GrassmannParams& space, const OrbitalMeasureSpec& spec, double s,
                                         int m1_max, const SeriesOptions& opts = {})
{
    spec.validate(space);
    if (m1_max < 1) throw domain_error("sobolev_partial_sums: m1_max must be >= 1");
    const int l = spec.l;
    const auto weights = enumerate_weights(space, l, m1_max);
    std::vector<double> terms(weights.size());
    std::vector<std::vector<double>> abs_psi(weights.size(), std::vector<double>(spec.points.size()));
    parallel_for(static_cast<std::int64_t>(weights.size()), opts.workers, [&](std::int64_t idx) {
        const auto i = static_cast<std::size_t>(idx);
        const SphericalFunction psi(space, weights[i], opts.eval);
        double product = 1.0;
        for (std::size_t a = 0; a < spec.points.size(); ++a) {
            const double v = psi(spec.points[a]);
            abs_psi[i][a] = std::abs(v);
            product *= v * v;
        }
        const double kappa = casimir(space, weights[i], opts.killing_scale);
        terms[i] = dimension_as_double(space, weights[i]) * std::pow(1.0 + kappa, s) * product;
    });

    SeriesReport report;
    report.cutoff = m1_max;
    report.s = s;
    report.killing_scale = opts.killing_scale.value_or(default_killing_scale(space));
    report.partial_sums.assign(static_cast<std::size_t>(m1_max) + 1, 0.0);
    KahanSum acc;
    std::size_t i = 0;
    for (int cutoff = 0; cutoff <= m1_max; ++cutoff) {
        for (; i < weights.size() && weights[i].m1() == cutoff; ++i) acc.add(terms[i]);
        report.partial_sums[static_cast<std::size_t>(cutoff)] = acc.value();
    }

    // Decay constants from the most recent weights of each stratum.
    const std::size_t r = spec.points.size();
    std::vector<double> c_interior(r, 0.0), c_boundary(r, 0.0);
    int seen_interior = 0, seen_boundary = 0;
    for (std::size_t idx = weights.size(); idx-- > 0;) {
        const auto& w = weights[idx];
        const bool interior = w.m.back() > 0;
        if (interior && seen_interior >= opts.fit_window) continue;
        if (!interior && (space.q == 1 || seen_boundary >= opts.fit_window)) continue;
        auto& target = interior ? c_interior : c_boundary;
        for (std::size_t a = 0; a < r; ++a)
            target[a] = std::max(target[a], detail::decay_normalized(space, w, abs_psi[idx][a]));
        (interior ? seen_interior : seen_boundary)++;
        if (seen_interior >= opts.fit_window && (space.q == 1 || seen_boundary >= opts.fit_window)) break;
    }
    report.decay_constants.resize(r);
    double constant_product = 1.0;
    for (std::size_t a = 0; a < r; ++a) {
        report.decay_constants[a] = std::max(c_interior[a], c_boundary[a]);
        constant_product *= report.decay_constants[a] * report.decay_constants[a];
    }

    const int degree = dimension_degree(space);
    const double e_int = 0.5 * (2 * space.p - space.q);
    report.decay_exponent = 2.0 * e_int * static_cast<double>(r) - degree - 2.0 * s - (space.q - 1);
    if (report.decay_exponent > 1.0) {
        const double next = static_cast<double>(m1_max) + 1.0;
        const double dim_factor =
            dimension_envelope(space, l, m1_max + 1).convert_to<double>() / std::pow(next, degree);
        double casimir_factor = 1.0;
        if (s >= 0.0) {
            const auto top = make_weight(space, l, std::vector<int>(static_cast<std::size_t>(space.q), m1_max + 1));
            casimir_factor = std::pow((1.0 + casimir(space, top, opts.killing_scale)) / (next * next), s);
        } else {
            casimir_factor = std::pow(4.0 * report.killing_scale, s);
        }
        const double count_factor = std::pow((next + 1.0) / next, space.q - 1);
        const double amplitude = dim_factor * casimir_factor * count_factor * constant_product;
        const double gamma = report.decay_exponent;
        report.tail_bound = amplitude * std::pow(static_cast<double>(m1_max), 1.0 - gamma) / (gamma - 1.0);
    }
    report.converged = std::isfinite(report.tail_bound) && report.tail_bound < opts.certify_ratio * report.final_sum();
    return report;
}

/// Coefficients of the truncated Plancherel series of the density:
/// f = sum_lambda c_lambda psi_lambda with c_lambda = d_lambda prod_i psi_lambda(a_i^{-1}).
struct SeriesTerm {
    SphericalWeight weight;
    double dimension = 0.0;
    double coefficient = 0.0;
};

inline std::vector<SeriesTerm> synthesis_coefficients(const GrassmannParams& space, const OrbitalMeasureSpec& spec,
                                                      int m1_max, const SeriesOptions& opts = {})
{
    spec.validate(space);
    const auto weights = enumerate_weights(space, spec.l, m1_max);
    std::vector<SeriesTerm> terms(weights.size());
    parallel_for(static_cast<std::int64_t>(weights.size()), opts.workers, [&](std::int64_t idx) {
        const auto i = static_cast<std::size_t>(idx);
        SeriesTerm t;
        t.weight = weights[i];
        t.dimension = dimension_as_double(space, weights[i]);
        t.coefficient = t.dimension * pairing_reference(spec, space, weights[i], opts.eval);
        terms[i] = std::move(t);
    });
    return terms;
}

/// Haar pairing of the truncated series against conj(psi_mu), computed from
/// Schur orthogonality  int psi_lambda conj(psi_mu) dU = delta / d_mu.
inline double series_haar_pairing(const std::vector<SeriesTerm>& terms, const SphericalWeight& mu)
{
    for (const auto& t : terms)
        if (t.weight == mu) return t.coefficient / t.dimension;
    return 0.0;
}

struct DensityGrid {
    std::vector<TorusPoint> grid;
    std::vector<double> values;
    int cutoff = 0;
    double max_imaginary_residue = 0.0;
    std::vector<std::string> warnings;
};

/// Truncated Plancherel series f(g) = sum_lambda c_lambda psi_lambda(g) of the
/// Radon-Nikodym density, evaluated on torus points through the group
/// element exp(sqrt(-1) H_T).
inline DensityGrid density_synthesis(const GrassmannParams& space, const OrbitalMeasureSpec& spec,
                                     const std::vector<TorusPoint>& grid, int m1_max, const SeriesOptions& opts = {})
{
    spec.validate(space);
    if (m1_max < 0) throw domain_error("density_synthesis: m1_max must be >= 0");
    if (!absolute_continuity_gate(space, spec.r()))
        throw domain_error("density_synthesis: r = " + std::to_string(spec.r()) +
                           " is below dim U/K = " + std::to_string(space.dim_uk) +
                           "; the convolution need not have a density");
    for (const auto& pt : grid)
        if (pt.rank() != static_cast<std::size_t>(space.q)) throw domain_error("grid point rank does not match q");

    DensityGrid out;
    out.grid = grid;
    out.cutoff = m1_max;
    if (m1_max >= 1) {
        const auto check = sobolev_partial_sums(space, spec, 0.0, m1_max, opts);
        if (!check.converged)
            out.warnings.push_back("L2 series not certified at cutoff " + std::to_string(m1_max) +
                                   " (tail bound " + std::to_string(check.tail_bound) + ")");
    } else {
        out.warnings.push_back("cutoff 0 keeps only the lowest term");
    }

    const auto terms = synthesis_coefficients(space, spec, m1_max, opts);
    std::vector<Complex> acc(grid.size(), Complex(0.0));
    std::vector<CMatrix> elements;
    elements.reserve(grid.size());
    for (const auto& pt : grid) elements.push_back(torus_element(space, pt));
    parallel_for(static_cast<std::int64_t>(grid.size()), opts.workers, [&](std::int64_t idx) {
        const auto g = static_cast<std::size_t>(idx);
        const KakCoordinates kak = kak_decompose(space, elements[g]);
        Complex sum(0.0);
        for (const auto& t : terms) {
            const SphericalFunction psi(space, t.weight, opts.eval);
            sum += t.coefficient * spherical_at(psi, kak);
        }
        acc[g] = sum;
    });
    out.values.resize(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        out.values[g] = acc[g].real();
        out.max_imaginary_residue = std::max(out.max_imaginary_residue, std::abs(acc[g].imag()));
    }
    return out;
}

}  // namespace grassharm

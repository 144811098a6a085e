#pragma once

// JSON and CSV emission for weights, spherical tables, series traces and
// density grids. Floating-point values are written with 17 significant
// digits so that identical runs give identical bytes.

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "grassharm/dimension.hpp"
#include "grassharm/lattice.hpp"
#include "grassharm/measure.hpp"
#include "grassharm/sobolev.hpp"
#include "grassharm/spherical.hpp"

namespace grassharm::io {

using json = nlohmann::ordered_json;

inline std::string format_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline json to_json(const GrassmannParams& space, const SphericalWeight& w)
{
    return json{{"p", space.p}, {"q", space.q}, {"l", w.l}, {"m", w.m}, {"lambda", w.lambda}};
}

inline json to_json(const RestrictedRoot& root)
{
    return json{{"label", root.label()}, {"coefficients", root.coeffs}, {"multiplicity", root.multiplicity}};
}

inline json to_json(const MCEstimate& e)
{
    return json{{"estimate", {e.value.real(), e.value.imag()}},
                {"stderr", e.std_error},
                {"samples", e.samples},
                {"drift_corrections", e.drift_corrections}};
}

inline json to_json(const MCComparison& c)
{
    json j = to_json(c.estimate);
    j["reference"] = {c.reference.real(), c.reference.imag()};
    j["sigmas"] = c.sigmas;
    return j;
}

inline json to_json(const SeriesReport& r)
{
    return json{{"cutoff", r.cutoff},
                {"s", r.s},
                {"killing_scale", r.killing_scale},
                {"partial_sums", r.partial_sums},
                {"tail_bound", r.tail_bound},
                {"decay_exponent", r.decay_exponent},
                {"decay_constants", r.decay_constants},
                {"converged", r.converged}};
}

inline json to_json(const DensityGrid& d)
{
    json pts = json::array();
    for (const auto& pt : d.grid) pts.push_back(pt.t);
    return json{{"cutoff", d.cutoff},
                {"grid", pts},
                {"values", d.values},
                {"max_imaginary_residue", d.max_imaginary_residue},
                {"warnings", d.warnings}};
}

/// m_1..m_q, lambda_1..lambda_q, d_lambda, kappa_lambda.
inline void write_weight_csv(std::ostream& os, const GrassmannParams& space, const std::vector<SphericalWeight>& ws,
                             std::optional<double> killing_scale = std::nullopt)
{
    for (int i = 1; i <= space.q; ++i) os << "m_" << i << ',';
    for (int i = 1; i <= space.q; ++i) os << "lambda_" << i << ',';
    os << "d_lambda,kappa_lambda\n";
    for (const auto& w : ws) {
        for (int v : w.m) os << v << ',';
        for (auto v : w.lambda) os << v << ',';
        os << dimension(space, w) << ',' << format_real(casimir(space, w, killing_scale)) << '\n';
    }
}

/// m_1..m_q, l, t_1..t_q, psi.
inline void write_spherical_csv(std::ostream& os, const GrassmannParams& space, const std::vector<SphericalWeight>& ws,
                                const std::vector<TorusPoint>& grid, const SphericalEvalOptions& opts = {})
{
    for (int i = 1; i <= space.q; ++i) os << "m_" << i << ',';
    os << "l,";
    for (int i = 1; i <= space.q; ++i) os << "t_" << i << ',';
    os << "psi\n";
    for (const auto& w : ws) {
        const SphericalFunction psi(space, w, opts);
        for (const auto& pt : grid) {
            for (int v : w.m) os << v << ',';
            os << w.l << ',';
            for (double t : pt.t) os << format_real(t) << ',';
            os << format_real(psi(pt)) << '\n';
        }
    }
}

/// cutoff, partial_sum, tail_bound (the bound is only known at the final cutoff).
inline void write_series_csv(std::ostream& os, const SeriesReport& r)
{
    os << "cutoff,partial_sum,tail_bound\n";
    for (std::size_t c = 0; c < r.partial_sums.size(); ++c) {
        os << c << ',' << format_real(r.partial_sums[c]) << ',';
        if (static_cast<int>(c) == r.cutoff) os << format_real(r.tail_bound);
        os << '\n';
    }
}

/// t_1..t_q, f.
inline void write_density_csv(std::ostream& os, const DensityGrid& d)
{
    const std::size_t q = d.grid.empty() ? 0 : d.grid.front().rank();
    for (std::size_t i = 1; i <= q; ++i) os << "t_" << i << ',';
    os << "f\n";
    for (std::size_t g = 0; g < d.grid.size(); ++g) {
        for (double t : d.grid[g].t) os << format_real(t) << ',';
        os << format_real(d.values[g]) << '\n';
    }
}

}  // namespace grassharm::io

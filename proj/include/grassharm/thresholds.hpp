#pragma once

// Convergence and smoothness thresholds for r-fold convolutions of
// chi_l-orbital measures.

#include <cmath>
#include <cstdint>
#include <string>

#include "grassharm/lattice.hpp"

namespace grassharm {

/// Smallest r for which the r-fold convolution density is guaranteed C^nu:
///   max(floor(((p+q)^2 + 2 nu + q(2p-1)) / (2p-q)) + 1, 2pq).
inline std::int64_t smoothness_threshold(const GrassmannParams& space, int nu)
{
    if (nu < 1) throw domain_error("smoothness_threshold: nu must be >= 1, got " + std::to_string(nu));
    const std::int64_t p = space.p;
    const std::int64_t q = space.q;
    const std::int64_t num = (p + q) * (p + q) + 2 * nu + q * (2 * p - 1);
    const std::int64_t den = 2 * p - q;  // >= 1 because p >= q >= 1
    const std::int64_t first = num / den + 1;
    const std::int64_t second = 2 * p * q;
    return first > second ? first : second;
}

/// The H^s membership condition: r > (1 + 2s + q(2p-1)) / (2p-q) and r >= 2pq.
inline bool sobolev_r_condition(const GrassmannParams& space, double s, std::int64_t r)
{
    if (s < 0.0) throw domain_error("sobolev_r_condition: s must be >= 0");
    if (r < 1) throw domain_error("sobolev_r_condition: r must be >= 1");
    const double p = space.p;
    const double q = space.q;
    // Compare r (2p-q) > 1 + 2s + q(2p-1) to keep the strict inequality exact
    // for integer-valued s.
    const bool decay = static_cast<double>(r) * (2.0 * p - q) > 1.0 + 2.0 * s + q * (2.0 * p - 1.0);
    return decay && r >= static_cast<std::int64_t>(space.dim_uk);
}

/// The r-fold convolution of chi_l-orbital measures is absolutely continuous
/// once r >= dim U/K = 2pq.
inline bool absolute_continuity_gate(const GrassmannParams& space, std::int64_t r)
{
    if (r < 1) throw domain_error("absolute_continuity_gate: r must be >= 1");
    return r >= static_cast<std::int64_t>(space.dim_uk);
}

/// Sobolev exponent s = nu + ((p+q)^2 - 1)/2 + eps used to reach C^nu through
/// the embedding H^s in C^nu on SU(p+q).
inline double embedding_sobolev_exponent(const GrassmannParams& space, int nu, double eps)
{
    return nu + (static_cast<double>(space.n) * space.n - 1.0) / 2.0 + eps;
}

/// Smallest r satisfying `sobolev_r_condition` for the given s.
inline std::int64_t minimal_sobolev_r(const GrassmannParams& space, double s)
{
    if (s < 0.0) throw domain_error("minimal_sobolev_r: s must be >= 0");
    const double bound = (1.0 + 2.0 * s + space.q * (2.0 * space.p - 1.0)) / (2.0 * space.p - space.q);
    auto r = static_cast<std::int64_t>(std::floor(bound)) + 1;
    if (r < 1) r = 1;
    while (!sobolev_r_condition(space, s, r)) ++r;
    return r;
}

}  // namespace grassharm

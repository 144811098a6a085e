#pragma once

// Root data and the chi_l-spherical weight lattice of the complex
// Grassmannian SU(p+q)/S(U(p) x U(q)).

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grassharm/error.hpp"

namespace grassharm {

/// The pair (p, q) together with the constants derived from it.
struct GrassmannParams {
    int p = 1;
    int q = 1;
    int k = 0;       ///< p - q, drives the multiplicity of the short roots
    int n = 2;       ///< p + q
    int dim_uk = 2;  ///< real dimension 2pq of U/K

    friend bool operator==(const GrassmannParams&, const GrassmannParams&) = default;
};

inline GrassmannParams make_space(int p, int q)
{
    if (q < 1) throw domain_error("q must be at least 1, got " + std::to_string(q));
    if (p < q)
        throw domain_error("p must be at least q, got p=" + std::to_string(p) +
                           " q=" + std::to_string(q));
    return GrassmannParams{p, q, p - q, p + q, 2 * p * q};
}

enum class RootClass { simple, doubled, sum, difference };

/// A positive restricted root written in the basis alpha_1..alpha_q.
struct RestrictedRoot {
    std::vector<int> coeffs;
    int multiplicity = 0;
    RootClass kind = RootClass::simple;

    std::string label() const
    {
        std::string out;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const int c = coeffs[i];
            if (c == 0) continue;
            if (!out.empty()) out += c > 0 ? "+" : "-";
            else if (c < 0) out += "-";
            if (std::abs(c) != 1) out += std::to_string(std::abs(c));
            out += "a" + std::to_string(i + 1);
        }
        return out;
    }
};

/// Positive restricted roots with multiplicities: alpha_i (2k, dropped when
/// k = 0), 2 alpha_i (1), alpha_i +- alpha_j for i < j (2).
inline std::vector<RestrictedRoot> positive_roots(const GrassmannParams& space)
{
    const int q = space.q;
    std::vector<RestrictedRoot> roots;
    auto unit = [q](int i, int scale) {
        std::vector<int> c(static_cast<std::size_t>(q), 0);
        c[static_cast<std::size_t>(i)] = scale;
        return c;
    };
    for (int i = 0; i < q; ++i) {
        if (space.k > 0) roots.push_back({unit(i, 1), 2 * space.k, RootClass::simple});
        roots.push_back({unit(i, 2), 1, RootClass::doubled});
    }
    for (int i = 0; i < q; ++i) {
        for (int j = i + 1; j < q; ++j) {
            auto plus = unit(i, 1);
            plus[static_cast<std::size_t>(j)] = 1;
            auto minus = unit(i, 1);
            minus[static_cast<std::size_t>(j)] = -1;
            roots.push_back({plus, 2, RootClass::sum});
            roots.push_back({minus, 2, RootClass::difference});
        }
    }
    return roots;
}

/// Half the multiplicity-weighted sum of positive roots: rho_i = k + 1 + 2(q - i).
inline std::vector<std::int64_t> rho(const GrassmannParams& space)
{
    std::vector<std::int64_t> out(static_cast<std::size_t>(space.q));
    for (int i = 1; i <= space.q; ++i)
        out[static_cast<std::size_t>(i - 1)] = space.k + 1 + 2 * (space.q - i);
    return out;
}

/// Default normalization of the invariant form on a*: <u, v> = 4n sum u_i v_i.
inline double default_killing_scale(const GrassmannParams& space) { return 4.0 * space.n; }

template <typename U, typename V>
double killing_inner(const GrassmannParams& space, std::span<const U> u, std::span<const V> v,
                     std::optional<double> scale = std::nullopt)
{
    if (u.size() != static_cast<std::size_t>(space.q) || v.size() != u.size())
        throw domain_error("killing_inner: both vectors must have length q");
    const double c = scale.value_or(default_killing_scale(space));
    if (!(c > 0.0)) throw domain_error("killing_inner: scale must be positive");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        acc += static_cast<double>(u[i]) * static_cast<double>(v[i]);
    return c * acc;
}

inline double killing_inner(const GrassmannParams& space, const std::vector<double>& u,
                            const std::vector<double>& v, std::optional<double> scale = std::nullopt)
{
    return killing_inner<double, double>(space, std::span<const double>(u),
                                         std::span<const double>(v), scale);
}

/// A highest weight lambda = (2 m_1 + |l|, ..., 2 m_q + |l|) of a chi_l-spherical
/// representation, with the spectral data used by the spherical-function formula.
struct SphericalWeight {
    int l = 0;
    std::vector<int> m;
    std::vector<std::int64_t> lambda;      ///< 2 m_i + |l|
    std::vector<std::int64_t> spectral_n;  ///< m_i + q - i
    std::vector<std::int64_t> spectral_c;  ///< n_i (n_i + |l| + k + 1)

    int m1() const { return m.empty() ? 0 : m.front(); }
    int abs_l() const { return l < 0 ? -l : l; }

    friend bool operator==(const SphericalWeight& a, const SphericalWeight& b)
    {
        return a.l == b.l && a.m == b.m;
    }
};

inline SphericalWeight make_weight(const GrassmannParams& space, int l, std::vector<int> m)
{
    const int q = space.q;
    if (static_cast<int>(m.size()) != q)
        throw domain_error("weight must have exactly q = " + std::to_string(q) + " entries");
    for (int i = 0; i < q; ++i) {
        if (m[static_cast<std::size_t>(i)] < 0) throw domain_error("weight entries must be >= 0");
        if (i > 0 && m[static_cast<std::size_t>(i)] > m[static_cast<std::size_t>(i - 1)])
            throw domain_error("weight entries must be non-increasing");
    }
    SphericalWeight w;
    w.l = l;
    w.m = std::move(m);
    const std::int64_t al = l < 0 ? -l : l;
    for (int i = 1; i <= q; ++i) {
        const std::int64_t mi = w.m[static_cast<std::size_t>(i - 1)];
        const std::int64_t ni = mi + q - i;
        w.lambda.push_back(2 * mi + al);
        w.spectral_n.push_back(ni);
        w.spectral_c.push_back(ni * (ni + al + space.k + 1));
    }
    return w;
}

inline SphericalWeight zero_weight(const GrassmannParams& space, int l = 0)
{
    return make_weight(space, l, std::vector<int>(static_cast<std::size_t>(space.q), 0));
}

/// Casimir constant <lambda, lambda + 2 rho>; zero only at lambda = 0.
inline double casimir(const GrassmannParams& space, const SphericalWeight& w,
                      std::optional<double> scale = std::nullopt)
{
    const auto r = rho(space);
    std::vector<double> lam(w.lambda.begin(), w.lambda.end());
    std::vector<double> shifted(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) shifted[i] = lam[i] + 2.0 * static_cast<double>(r[i]);
    return killing_inner(space, lam, shifted, scale);
}

namespace detail {

inline void enumerate_rec(const GrassmannParams& space, int l, std::vector<int>& prefix, int bound,
                          std::vector<SphericalWeight>& out)
{
    if (static_cast<int>(prefix.size()) == space.q) {
        out.push_back(make_weight(space, l, prefix));
        return;
    }
    // Increasing lexicographic order: later coordinates vary fastest.
    for (int v = 0; v <= bound; ++v) {
        prefix.push_back(v);
        enumerate_rec(space, l, prefix, v, out);
        prefix.pop_back();
    }
}

}  // namespace detail

/// All weights with m_1 = `m1` exactly, in increasing lexicographic order.
inline std::vector<SphericalWeight> weight_shell(const GrassmannParams& space, int l, int m1)
{
    if (m1 < 0) throw domain_error("weight_shell: m1 must be >= 0");
    std::vector<SphericalWeight> out;
    std::vector<int> prefix{m1};
    detail::enumerate_rec(space, l, prefix, m1, out);
    return out;
}

/// Every weight with m_1 <= m1_max, in increasing lexicographic order of m
/// (so shells of equal m_1 are contiguous and appear in increasing m_1).
inline std::vector<SphericalWeight> enumerate_weights(const GrassmannParams& space, int l, int m1_max)
{
    if (m1_max < 0) throw domain_error("enumerate_weights: m1_max must be >= 0");
    std::vector<SphericalWeight> out;
    for (int m1 = 0; m1 <= m1_max; ++m1) {
        auto shell = weight_shell(space, l, m1);
        out.insert(out.end(), std::make_move_iterator(shell.begin()), std::make_move_iterator(shell.end()));
    }
    return out;
}

}  // namespace grassharm

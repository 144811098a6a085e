#pragma once

// chi_l-spherical functions of SU(p+q)/S(U(p) x U(q)) on the maximal torus.
//
// On exp(sqrt(-1) H_T) the function is a ratio of a q x q determinant of
// one-variable Jacobi polynomials P_{n_i}^{(k, |l|)}(cos 2 t_j) over the
// Vandermonde in cos 2 t_j, times prod cos^{|l|} t_j. The determinant ratio
// is evaluated through Newton divided differences so that coincident
// arguments (including the identity) are handled by derivative columns.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "grassharm/error.hpp"
#include "grassharm/jacobi.hpp"
#include "grassharm/lattice.hpp"
#include "grassharm/torus.hpp"

namespace grassharm {

enum class NormalizationMode {
    identity_calibrated,  ///< overall constant fixed by psi(identity) = 1
    closed_form_constant  ///< 2^{q(q-1)/2} prod_j (k+j)^{q-j} j! over prod (c_i - c_j)
};

struct SphericalEvalOptions {
    /// Spacing of the cos(2 t_j) below which arguments are merged and
    /// evaluated through derivative columns.
    double confluence_tolerance = 1e-6;
    NormalizationMode normalization = NormalizationMode::identity_calibrated;
    /// Weights with m_1 above this are rejected.
    int max_m1 = 300;

    void validate() const
    {
        if (!(confluence_tolerance > 0.0)) throw domain_error("confluence_tolerance must be positive");
        if (max_m1 < 0) throw domain_error("max_m1 must be >= 0");
    }
};

/// The one-variable block P_{nhat}^{(k, |l|)}(x) placed in the determinant.
inline double normalized_block(int nhat, const GrassmannParams& space, int l, double x)
{
    return jacobi_eval<double>(nhat, space.k, l < 0 ? -l : l, x);
}

namespace detail {

inline double block_derivative(int nhat, const GrassmannParams& space, int l, double x, int order)
{
    return jacobi_derivative<double>(nhat, space.k, l < 0 ? -l : l, x, order);
}

/// det[P_{n_i}(x_j)] / prod_{i<j} (x_i - x_j), symmetric in x. Arguments
/// closer than `tol` are merged to their mean and treated as repeated nodes.
inline double determinant_ratio(const GrassmannParams& space, const SphericalWeight& w,
                                std::span<const double> x, double tol)
{
    const std::size_t q = x.size();
    std::vector<double> z(x.begin(), x.end());
    std::sort(z.begin(), z.end());
    for (std::size_t start = 0; start < q;) {
        std::size_t end = start + 1;
        while (end < q && z[end] - z[end - 1] < tol) ++end;
        double mean = 0.0;
        for (std::size_t i = start; i < end; ++i) mean += z[i];
        mean /= static_cast<double>(end - start);
        for (std::size_t i = start; i < end; ++i) z[i] = mean;
        start = end;
    }

    Eigen::MatrixXd dd(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
    std::vector<double> level(q);
    for (std::size_t row = 0; row < q; ++row) {
        const int deg = static_cast<int>(w.spectral_n[row]);
        for (std::size_t i = 0; i < q; ++i) level[i] = normalized_block(deg, space, w.l, z[i]);
        dd(static_cast<Eigen::Index>(row), 0) = level[0];
        double factorial = 1.0;
        for (std::size_t len = 1; len < q; ++len) {
            factorial *= static_cast<double>(len);
            for (std::size_t i = 0; i + len < q; ++i) {
                const std::size_t j = i + len;
                if (z[j] == z[i])
                    level[i] = block_derivative(deg, space, w.l, z[i], static_cast<int>(len)) / factorial;
                else
                    level[i] = (level[i + 1] - level[i]) / (z[j] - z[i]);
            }
            dd(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(len)) = level[0];
        }
    }
    const double det = q == 1 ? dd(0, 0) : dd.fullPivLu().determinant();
    // det[f_i(z_j)] = det[dd] * prod_{i<j} (z_j - z_i); flip to the (x_i - x_j) ordering.
    const bool odd = ((q * (q - 1) / 2) % 2) == 1;
    return odd ? -det : det;
}

inline double closed_form_constant(const GrassmannParams& space)
{
    const int q = space.q;
    double c = std::ldexp(1.0, q * (q - 1) / 2);
    double fact = 1.0;
    for (int j = 1; j <= q - 1; ++j) {
        fact *= j;
        c *= std::pow(static_cast<double>(space.k + j), q - j) * fact;
    }
    return c;
}

inline double spectral_gap_product(const SphericalWeight& w)
{
    double acc = 1.0;
    for (std::size_t i = 0; i < w.spectral_c.size(); ++i)
        for (std::size_t j = i + 1; j < w.spectral_c.size(); ++j)
            acc *= static_cast<double>(w.spectral_c[i] - w.spectral_c[j]);
    return acc;
}

inline void check_inputs(const GrassmannParams& space, const SphericalWeight& w, const SphericalEvalOptions& opts)
{
    opts.validate();
    if (static_cast<int>(w.m.size()) != space.q) throw domain_error("weight rank does not match q");
    if (w.m1() > opts.max_m1)
        throw domain_error("weight with m_1 = " + std::to_string(w.m1()) + " exceeds max_m1 = " +
                           std::to_string(opts.max_m1));
}

/// Multiplier turning the determinant ratio into psi for the selected mode.
inline double normalization_scale(const GrassmannParams& space, const SphericalWeight& w,
                                  const SphericalEvalOptions& opts)
{
    if (opts.normalization == NormalizationMode::closed_form_constant)
        return closed_form_constant(space) / spectral_gap_product(w);
    const std::vector<double> ones(static_cast<std::size_t>(space.q), 1.0);
    const double at_identity = determinant_ratio(space, w, ones, opts.confluence_tolerance);
    if (at_identity == 0.0 || !std::isfinite(at_identity))
        throw certification_error("identity value of the determinant ratio is not usable");
    return 1.0 / at_identity;
}

}  // namespace detail

/// psi_{lambda,l} for one weight, with its normalization computed once.
class SphericalFunction {
public:
    SphericalFunction(const GrassmannParams& space, SphericalWeight weight, SphericalEvalOptions opts = {})
        : space_(space), weight_(std::move(weight)), opts_(opts)
    {
        detail::check_inputs(space_, weight_, opts_);
        scale_ = detail::normalization_scale(space_, weight_, opts_);
    }

    double operator()(const TorusPoint& pt) const
    {
        if (pt.rank() != static_cast<std::size_t>(space_.q)) throw domain_error("torus point rank does not match q");
        return evaluate(pt.t);
    }

    double evaluate(std::span<const double> t) const
    {
        const std::size_t q = t.size();
        double x_buf[16];
        std::vector<double> x_heap;
        double* x = x_buf;
        if (q > 16) {
            x_heap.resize(q);
            x = x_heap.data();
        }
        double envelope = 1.0;
        const int al = weight_.abs_l();
        for (std::size_t j = 0; j < q; ++j) {
            x[j] = std::cos(2.0 * t[j]);
            if (al > 0) envelope *= std::pow(std::cos(t[j]), al);
        }
        return scale_ * envelope *
               detail::determinant_ratio(space_, weight_, std::span<const double>(x, q), opts_.confluence_tolerance);
    }

    const GrassmannParams& space() const { return space_; }
    const SphericalWeight& weight() const { return weight_; }
    const SphericalEvalOptions& options() const { return opts_; }
    double scale() const { return scale_; }

private:
    GrassmannParams space_;
    SphericalWeight weight_;
    SphericalEvalOptions opts_;
    double scale_ = 1.0;
};

/// Process-wide cache of per-weight normalization scales. Lookups take a
/// shared lock; a miss computes under the exclusive lock, so each key is
/// initialized at most once.
class CalibrationCache {
public:
    double scale(const GrassmannParams& space, const SphericalWeight& w, const SphericalEvalOptions& opts)
    {
        Key key{space.p, space.q, w.l, w.m, static_cast<int>(opts.normalization), opts.confluence_tolerance};
        {
            std::shared_lock lock(mutex_);
            if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        const double s = detail::normalization_scale(space, w, opts);
        ++initializations_;
        entries_.emplace(std::move(key), s);
        return s;
    }

    std::size_t initializations() const
    {
        std::shared_lock lock(mutex_);
        return initializations_;
    }

    static CalibrationCache& global()
    {
        static CalibrationCache cache;
        return cache;
    }

private:
    using Key = std::tuple<int, int, int, std::vector<int>, int, double>;
    mutable std::shared_mutex mutex_;
    std::map<Key, double> entries_;
    std::size_t initializations_ = 0;
};

inline double spherical_value(const GrassmannParams& space, const SphericalWeight& w, const TorusPoint& pt,
                              const SphericalEvalOptions& opts = {})
{
    detail::check_inputs(space, w, opts);
    if (pt.rank() != static_cast<std::size_t>(space.q)) throw domain_error("torus point rank does not match q");
    const double s = CalibrationCache::global().scale(space, w, opts);
    std::vector<double> x(pt.rank());
    double envelope = 1.0;
    for (std::size_t j = 0; j < pt.rank(); ++j) {
        x[j] = std::cos(2.0 * pt.t[j]);
        envelope *= std::pow(std::cos(pt.t[j]), w.abs_l());
    }
    return s * envelope * detail::determinant_ratio(space, w, x, opts.confluence_tolerance);
}

/// Central-difference gradient in t; truncation error O(step^2).
inline std::vector<double> spherical_gradient(const GrassmannParams& space, const SphericalWeight& w,
                                              const TorusPoint& pt, const SphericalEvalOptions& opts = {},
                                              double step = 1e-5)
{
    if (!pt.is_regular()) throw domain_error("spherical_gradient requires a regular torus point");
    if (!(step > 0.0)) throw domain_error("spherical_gradient: step must be positive");
    const SphericalFunction psi(space, w, opts);
    std::vector<double> grad(pt.rank());
    TorusPoint probe = pt;
    for (std::size_t j = 0; j < pt.rank(); ++j) {
        probe.t[j] = pt.t[j] + step;
        const double up = psi(probe);
        probe.t[j] = pt.t[j] - step;
        const double down = psi(probe);
        probe.t[j] = pt.t[j];
        grad[j] = (up - down) / (2.0 * step);
    }
    return grad;
}

enum class DecayBranch {
    interior,  ///< m = (n, ..., n): every m_i > 0
    boundary   ///< m = (n, ..., n, 0): the m_q = 0 stratum
};

struct DecayFit {
    double slope = 0.0;           ///< d log|psi| / d log n over the family
    double per_axis_slope = 0.0;  ///< slope divided by the number of growing coordinates
    double predicted = 0.0;       ///< the exponent the bound predicts per axis (negative)
    double residual = 0.0;        ///< RMS residual of the log-log fit
    std::size_t samples = 0;
};

namespace detail {

inline std::vector<int> decay_family_member(const GrassmannParams& space, DecayBranch branch, int n)
{
    std::vector<int> m(static_cast<std::size_t>(space.q), n);
    if (branch == DecayBranch::boundary) m.back() = 0;
    return m;
}

/// Window (in steps of n) long enough to cover one oscillation of |psi|
/// along the diagonal family at the given point.
inline int envelope_window(const TorusPoint& pt)
{
    double nearest = std::numbers::pi / 2.0;
    for (double t : pt.t) nearest = std::min({nearest, t, std::numbers::pi / 2.0 - t});
    return static_cast<int>(std::ceil(std::numbers::pi / (2.0 * nearest))) + 1;
}

}  // namespace detail

/// Least-squares slope of log|psi| against log n along m = (n, ..., n)
/// (interior) or m = (n, ..., n, 0) (boundary). With `use_envelope`, |psi|
/// at n is replaced by its maximum over a window of one oscillation, which
/// removes the zeros of the oscillating factor from the fit.
inline DecayFit decay_exponent_fit(const GrassmannParams& space, int l, const TorusPoint& pt,
                                   const std::vector<int>& n_values, DecayBranch branch = DecayBranch::interior,
                                   const SphericalEvalOptions& opts = {}, bool use_envelope = true)
{
    if (n_values.size() < 4) throw domain_error("decay_exponent_fit needs at least 4 sample points");
    if (!pt.is_regular()) throw domain_error("decay_exponent_fit requires a regular torus point");
    if (n_values.front() < 10) throw domain_error("decay_exponent_fit: smallest n must be >= 10");
    for (std::size_t i = 1; i < n_values.size(); ++i)
        if (n_values[i] <= n_values[i - 1]) throw domain_error("decay_exponent_fit: n values must increase");

    const int growing = branch == DecayBranch::interior ? space.q : space.q - 1;
    const int window = use_envelope ? detail::envelope_window(pt) : 1;
    std::vector<double> xs, ys;
    for (int n : n_values) {
        double env = 0.0;
        for (int step = 0; step < window; ++step) {
            const auto m = detail::decay_family_member(space, branch, growing > 0 ? n + step : n);
            env = std::max(env, std::abs(spherical_value(space, make_weight(space, l, m), pt, opts)));
        }
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(std::max(env, 1e-300)));
    }
    const auto count = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    DecayFit fit;
    fit.samples = xs.size();
    fit.slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (my + fit.slope * (xs[i] - mx));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / count);
    fit.per_axis_slope = growing > 0 ? fit.slope / growing : 0.0;
    const double exponent = branch == DecayBranch::interior ? 0.5 * (2 * space.p - space.q)
                                                           : 0.5 * (2 * space.p - space.q + 3);
    fit.predicted = growing > 0 ? -exponent : 0.0;
    return fit;
}

}  // namespace grassharm

#pragma once

// Dimensions of chi_l-spherical representations in exact rational arithmetic.

#include <boost/multiprecision/cpp_int.hpp>

#include "grassharm/lattice.hpp"

namespace grassharm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// phi(x; t) = (x - t)(x - t + 1)...(x + t): 2t + 1 unit-spaced factors
/// centred at x. t may be a half-integer; t = -1/2 gives the empty product.
inline Rational phi(const Rational& x, const Rational& t)
{
    const Rational count = 2 * t + 1;
    if (denominator(count) != 1 || count < 0)
        throw domain_error("phi: 2t + 1 must be a non-negative integer");
    const auto factors = static_cast<long long>(numerator(count));
    Rational acc = 1;
    Rational v = x - t;
    for (long long i = 0; i < factors; ++i, v += 1) acc *= v;
    return acc;
}

/// Exact dimension of the irreducible representation of SU(p+q) whose
/// highest weight is the chi_l-spherical weight `w`, as a reduced rational.
///
/// Restricted-root product form:
///   prod_i  (x_i / y_i)
///   prod_i  phi((x_i + |l|)/2; (k-1)/2) phi((x_i - |l|)/2; (k-1)/2) / phi(y_i/2; (k-1)/2)^2
///   prod_{i<j} ((m_i + m_j + |l| + k + 1 + 2q - i - j) / (k + 1 + 2q - i - j))^2
///   prod_{i<j} ((m_i - m_j + j - i) / (j - i))^2
/// with x_i = 2 m_i + |l| + k + 1 + 2(q - i) and y_i = k + 1 + 2(q - i).
/// The phi block contributes k unit-spaced factors above and below each
/// centre and is absent when p = q.
inline Rational dimension_rational(const GrassmannParams& space, const SphericalWeight& w)
{
    const int q = space.q;
    const int k = space.k;
    const long long al = w.abs_l();
    const Rational half_span = Rational(k - 1, 2);
    Rational d = 1;
    for (int i = 1; i <= q; ++i) {
        const long long mi = w.m[static_cast<std::size_t>(i - 1)];
        const long long y = k + 1 + 2 * (q - i);
        const long long x = 2 * mi + al + y;
        d *= Rational(x, y);
        if (k > 0) {
            d *= phi(Rational(x + al, 2), half_span) * phi(Rational(x - al, 2), half_span);
            const Rational base = phi(Rational(y, 2), half_span);
            d /= base * base;
        }
        for (int j = i + 1; j <= q; ++j) {
            const long long mj = w.m[static_cast<std::size_t>(j - 1)];
            const long long den = k + 1 + 2 * q - (i + j);
            const Rational sum_ratio(mi + mj + al + den, den);
            const Rational diff_ratio(mi - mj + j - i, j - i);
            d *= sum_ratio * sum_ratio * diff_ratio * diff_ratio;
        }
    }
    return d;
}

/// d_lambda as an exact integer. Throws if the rational product does not
/// reduce to a positive integer, which would indicate a corrupted weight.
inline BigInt dimension(const GrassmannParams& space, const SphericalWeight& w)
{
    const Rational d = dimension_rational(space, w);
    if (denominator(d) != 1 || numerator(d) <= 0)
        throw certification_error("dimension did not reduce to a positive integer");
    return numerator(d);
}

inline double dimension_as_double(const GrassmannParams& space, const SphericalWeight& w)
{
    return dimension(space, w).convert_to<double>();
}

/// (m_1 + 1)^{q(2p-1)}. Only valid as an upper bound on d_lambda for part of
/// the lattice (it fails for every |l| >= 1 at m = 0, and at p = q = 1);
/// see `dimension_envelope` for an unconditional bound.
inline BigInt dimension_bound(const GrassmannParams& space, const SphericalWeight& w)
{
    BigInt base = w.m1() + 1;
    return boost::multiprecision::pow(base, static_cast<unsigned>(space.q * (2 * space.p - 1)));
}

/// Upper bound on d_lambda over the whole shell {m_1 = m1}: the Weyl product
/// with every factor replaced by its maximum over the shell. Each factor has
/// the shape (c m + b)/D with b >= 0, so envelope(m)/m^{q(2p-1)} is
/// non-increasing in m, which is what the Sobolev tail bound relies on.
inline Rational dimension_envelope(const GrassmannParams& space, int l, long long m1)
{
    const int p = space.p;
    const int q = space.q;
    const int n = space.n;
    const long long al = l < 0 ? -l : l;
    Rational d = 1;
    // Positions 1..q carry m_i + |l|, q+1..p carry 0, n+1-i carries -m_i.
    for (int i = 1; i <= q; ++i) {
        for (int j = i + 1; j <= q; ++j) {
            const Rational f(m1 + (j - i), j - i);  // top/top and bottom/bottom
            d *= f * f;
        }
        for (int c = q + 1; c <= p; ++c) {
            d *= Rational(m1 + al + (c - i), c - i);         // top/middle
            d *= Rational(m1 + (n + 1 - i - c), n + 1 - i - c);  // middle/bottom
        }
        for (int j = 1; j <= q; ++j) {
            const int gap = (n + 1 - j) - i;
            d *= Rational(2 * m1 + al + gap, gap);  // top/bottom
        }
    }
    return d;
}

/// Polynomial degree q(2p-1) of d_lambda in m_1.
inline int dimension_degree(const GrassmannParams& space) { return space.q * (2 * space.p - 1); }

}  // namespace grassharm

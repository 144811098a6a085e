#pragma once

// Group elements of U = SU(p+q) and K = S(U(p) x U(q)): Haar sampling, the
// characters chi_l, the torus exp(sqrt(-1) H_T) and KAK coordinates.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "grassharm/error.hpp"
#include "grassharm/lattice.hpp"
#include "grassharm/rng.hpp"
#include "grassharm/torus.hpp"

namespace grassharm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// max |U^* U - I| entrywise.
inline double unitarity_defect(const CMatrix& u)
{
    return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

/// A (p+q) x (p+q) special-unitary matrix.
struct UnitaryElement {
    CMatrix entries;

    static UnitaryElement checked(CMatrix m, double tol = 1e-10)
    {
        if (m.rows() != m.cols()) throw domain_error("unitary element must be square");
        if (unitarity_defect(m) > tol) throw domain_error("matrix is not unitary within tolerance");
        if (std::abs(m.determinant() - Complex(1.0)) > tol) throw domain_error("matrix determinant is not 1");
        return UnitaryElement{std::move(m)};
    }
};

/// Block-diagonal element diag(A, B) of K, det A det B = 1.
struct KElement {
    CMatrix a_block;  ///< p x p
    CMatrix b_block;  ///< q x q

    CMatrix as_matrix() const
    {
        const auto p = a_block.rows();
        const auto q = b_block.rows();
        CMatrix m = CMatrix::Zero(p + q, p + q);
        m.topLeftCorner(p, p) = a_block;
        m.bottomRightCorner(q, q) = b_block;
        return m;
    }

    KElement operator*(const KElement& other) const
    {
        return KElement{a_block * other.a_block, b_block * other.b_block};
    }

    static KElement identity(const GrassmannParams& space)
    {
        return KElement{CMatrix::Identity(space.p, space.p), CMatrix::Identity(space.q, space.q)};
    }
};

/// Haar-distributed element of U(n): QR of a complex Gaussian matrix with
/// the phases of diag(R) moved into Q.
inline CMatrix haar_unitary(int n, CounterRng& rng)
{
    if (n < 1) throw domain_error("haar_unitary: n must be >= 1");
    CMatrix z(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) z(i, j) = rng.complex_normal();
    if (n == 1) return CMatrix::Constant(1, 1, z(0, 0) / std::abs(z(0, 0)));
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix& r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

/// Haar element of SU(n): a Haar U(n) sample times a uniformly chosen n-th
/// root of its inverse determinant.
inline CMatrix haar_special_unitary(int n, CounterRng& rng)
{
    CMatrix u = haar_unitary(n, rng);
    const double arg = std::arg(u.determinant());
    const auto branch = static_cast<double>(rng.below(static_cast<std::uint64_t>(n)));
    u *= std::polar(1.0, (-arg + 2.0 * std::numbers::pi * branch) / n);
    return u;
}

/// Haar element of K: (A, B) Haar on U(p) x U(q), then A is rescaled by one
/// of the p admissible roots so that det A det B = 1.
inline KElement haar_k(const GrassmannParams& space, CounterRng& rng)
{
    KElement k{haar_unitary(space.p, rng), haar_unitary(space.q, rng)};
    const double arg = std::arg(k.a_block.determinant() * k.b_block.determinant());
    const auto branch = static_cast<double>(rng.below(static_cast<std::uint64_t>(space.p)));
    k.a_block *= std::polar(1.0, (-arg + 2.0 * std::numbers::pi * branch) / space.p);
    return k;
}

/// z^l for integer l (negative powers via the inverse).
inline Complex integer_power(Complex z, int l)
{
    Complex base = l < 0 ? Complex(1.0) / z : z;
    unsigned e = static_cast<unsigned>(l < 0 ? -l : l);
    Complex acc(1.0);
    while (e) {
        if (e & 1U) acc *= base;
        base *= base;
        e >>= 1U;
    }
    return acc;
}

/// The character chi_l(diag(A, B)) = det(B)^l.
inline Complex chi_l(int l, const KElement& k) { return integer_power(k.b_block.determinant(), l); }

inline Complex chi_l(const GrassmannParams& /*space*/, int l, const KElement& k) { return chi_l(l, k); }

/// exp(sqrt(-1) H_T): for each j the coordinates (j, n-1-j) carry the
/// rotation [[cos t_j, i sin t_j], [i sin t_j, cos t_j]], identity elsewhere.
inline CMatrix torus_element(const GrassmannParams& space, const TorusPoint& pt)
{
    if (pt.rank() != static_cast<std::size_t>(space.q)) throw domain_error("torus point rank does not match q");
    const int n = space.n;
    CMatrix g = CMatrix::Identity(n, n);
    for (int j = 0; j < space.q; ++j) {
        const double t = pt.t[static_cast<std::size_t>(j)];
        const int a = j;
        const int b = n - 1 - j;
        g(a, a) = g(b, b) = std::cos(t);
        g(a, b) = g(b, a) = Complex(0.0, std::sin(t));
    }
    return g;
}

/// The generator sqrt(-1) H_T itself (for checks against a generic exponential).
inline CMatrix torus_generator(const GrassmannParams& space, const TorusPoint& pt)
{
    const int n = space.n;
    CMatrix h = CMatrix::Zero(n, n);
    for (int j = 0; j < space.q; ++j) {
        const double t = pt.t[static_cast<std::size_t>(j)];
        h(j, n - 1 - j) = h(n - 1 - j, j) = Complex(0.0, t);
    }
    return h;
}

/// Torus coordinates of g = k1 exp(sqrt(-1) H_T) k2 together with the unit
/// phase det(D)/|det D| of the lower-right q x q block, which equals
/// chi_1(k1 k2) for any such factorization.
struct KakCoordinates {
    TorusPoint point;
    Complex phase{1.0, 0.0};
};

inline KakCoordinates kak_decompose(const GrassmannParams& space, const CMatrix& g, double unitary_tol = 1e-8)
{
    if (g.rows() != space.n || g.cols() != space.n) throw domain_error("kak: matrix size does not match p+q");
    if (unitarity_defect(g) > unitary_tol) throw domain_error("kak: input is not unitary");
    const int p = space.p;
    const int q = space.q;
    KakCoordinates out;
    out.point.t.resize(static_cast<std::size_t>(q));
    if (q == 1) {
        const double s = g.topRightCorner(p, 1).norm();
        const Complex d = g(p, p);
        const double c = std::abs(d);
        out.point.t[0] = std::atan2(s, c);
        if (c > 0.0) out.phase = d / c;
        return out;
    }
    const Eigen::VectorXd sin_vals = g.topRightCorner(p, q).jacobiSvd().singularValues();  // descending
    const CMatrix d = g.bottomRightCorner(q, q);
    const Eigen::VectorXd cos_vals = d.jacobiSvd().singularValues();  // descending
    for (int j = 0; j < q; ++j)
        out.point.t[static_cast<std::size_t>(j)] = std::atan2(sin_vals(j), cos_vals(q - 1 - j));
    const Complex det = d.determinant();
    if (std::abs(det) > 0.0) out.phase = det / std::abs(det);
    return out;
}

/// t_j = arcsin of the singular values of the upper-right p x q block,
/// in the canonical order pi/2 >= t_1 >= ... >= t_q >= 0.
inline TorusPoint kak_coordinates(const GrassmannParams& space, const CMatrix& g)
{
    return kak_decompose(space, g).point;
}

/// Re-orthonormalize a drifted product and restore det = 1.
inline void reorthonormalize(CMatrix& g)
{
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < g.cols(); ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    const double arg = std::arg(q.determinant());
    q *= std::polar(1.0, -arg / static_cast<double>(g.cols()));
    g = std::move(q);
}

}  // namespace grassharm

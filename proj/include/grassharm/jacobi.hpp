#pragma once

#include <cmath>
#include <string>

#include "grassharm/error.hpp"

namespace grassharm {

/// Classical Jacobi polynomial P_n^{(alpha, beta)}(x) by the three-term recurrence.
template <typename Real>
Real jacobi_eval(int n, Real alpha, Real beta, Real x)
{
    if (n < 0) throw domain_error("jacobi_eval: degree must be >= 0, got " + std::to_string(n));
    if (!(alpha > Real(-1)) || !(beta > Real(-1)))
        throw domain_error("jacobi_eval: alpha and beta must exceed -1");
    if (n == 0) return Real(1);
    Real y0 = 1;
    Real y1 = (alpha + 1) + (alpha + beta + 2) * (x - 1) / Real(2);
    const Real ab = alpha + beta;
    for (int kk = 2; kk <= n; ++kk) {
        const Real k = kk;
        const Real denom = 2 * k * (k + ab) * (2 * k + ab - 2);
        const Real g1 = (2 * k + ab - 1) * ((2 * k + ab) * (2 * k + ab - 2) * x + alpha * alpha - beta * beta);
        const Real g0 = -2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + ab);
        const Real yk = (g1 * y1 + g0 * y0) / denom;
        y0 = y1;
        y1 = yk;
    }
    return y1;
}

/// d^order/dx^order P_n^{(alpha, beta)}(x), using
/// (P_n^{(a,b)})' = (n + a + b + 1)/2 * P_{n-1}^{(a+1,b+1)}.
template <typename Real>
Real jacobi_derivative(int n, Real alpha, Real beta, Real x, int order)
{
    if (order < 0) throw domain_error("jacobi_derivative: order must be >= 0");
    if (order > n) return Real(0);
    Real scale = 1;
    for (int j = 1; j <= order; ++j) scale *= (alpha + beta + n + j) / Real(2);
    return scale * jacobi_eval<Real>(n - order, alpha + order, beta + order, x);
}

/// P_n^{(alpha, beta)}(1) = binom(n + alpha, n).
template <typename Real>
Real jacobi_at_one(int n, Real alpha)
{
    Real acc = 1;
    for (int j = 1; j <= n; ++j) acc *= (alpha + j) / Real(j);
    return acc;
}

}  // namespace grassharm

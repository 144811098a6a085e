#pragma once

// Independent reference for p = q = 1: matrix coefficients of SU(2) spin
// representations, built from explicit angular-momentum matrices.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace grassharm::verify {

/// J_x on the spin-j space (dimension 2j+1), basis mu = j, j-1, ..., -j.
inline Eigen::MatrixXd spin_jx(int two_j)
{
    const int dim = two_j + 1;
    const double j = 0.5 * two_j;
    Eigen::MatrixXd jx = Eigen::MatrixXd::Zero(dim, dim);
    for (int row = 1; row < dim; ++row) {
        const double mu = j - row;  // <mu+1| J_+ |mu>
        const double c = 0.5 * std::sqrt(j * (j + 1.0) - mu * (mu + 1.0));
        jx(row - 1, row) = c;
        jx(row, row - 1) = c;
    }
    return jx;
}

/// <j, mu | exp(2 i t J_x) | j, mu>, the coefficient of exp(sqrt(-1) H_t) in
/// spin j. two_mu must have the parity of two_j and |two_mu| <= two_j.
inline std::complex<double> spin_coefficient(int two_j, int two_mu, double t)
{
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(spin_jx(two_j));
    const Eigen::MatrixXd& v = eig.eigenvectors();
    const int row = (two_j - two_mu) / 2;
    std::complex<double> acc(0.0);
    for (int a = 0; a < two_j + 1; ++a)
        acc += v(row, a) * v(row, a) * std::polar(1.0, 2.0 * t * eig.eigenvalues()(a));
    return acc;
}

/// The chi_l-spherical vector of the weight m sits in spin j = m + |l|/2 at
/// J_z eigenvalue l/2.
inline std::complex<double> su2_spherical_reference(int l, int m, double t)
{
    const int abs_l = l < 0 ? -l : l;
    return spin_coefficient(2 * m + abs_l, l, t);
}

}  // namespace grassharm::verify

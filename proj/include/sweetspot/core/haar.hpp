#pragma once

#include "sweetspot/core/linalg.hpp"
#include "sweetspot/core/rng.hpp"

namespace sweetspot {

inline ComplexMatrix ginibre(std::size_t dim, SeededRng& rng)
{
    const auto n = static_cast<Eigen::Index>(dim);
    ComplexMatrix z(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(r, c) = Complex(re, im) * kInvSqrt2;
        }
    }
    return z;
}

/// Haar-distributed element of SU(dim).
///
/// QR of a complex Ginibre matrix, then Q <- Q diag(r_jj / |r_jj|) so the
/// decomposition is the unique one with positive R diagonal (plain QR output
/// is not Haar). A final global phase det(U)^(-1/dim) puts U in SU(dim).
inline ComplexMatrix haar_unitary(std::size_t dim, SeededRng& rng)
{
    if (dim < 2) throw LinalgError("haar_unitary: dim must be >= 2");
    const ComplexMatrix z = ginibre(dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& packed = qr.matrixQR();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex rjj = packed(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
    }
    const Complex det = q.determinant();
    const Complex fix = std::polar(1.0, -std::arg(det) / static_cast<double>(dim));
    return q * fix;
}

/// Haar-random pure state: a normalized complex Gaussian vector.
inline StateVector haar_state(std::size_t dim, SeededRng& rng)
{
    StateVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v[i] = Complex(re, im);
    }
    return v / v.norm();
}

} // namespace sweetspot

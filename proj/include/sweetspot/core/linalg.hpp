#pragma once

// Dense complex linear algebra on Eigen: tensor products, site embeddings,
// and the Hermitian-eigendecomposition exponential/logarithm used by every
// propagator in the library.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sweetspot {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Thrown when an operator fails a structural precondition (Hermiticity,
/// unitarity, dimension agreement).
class LinalgError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace pauli {

inline ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

inline ComplexMatrix x()
{
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline ComplexMatrix y()
{
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

inline ComplexMatrix z()
{
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

// Basis index 0 is spin up, so sigma+ maps |down> to |up>.
inline ComplexMatrix plus() { return 0.5 * (x() + Complex(0.0, 1.0) * y()); }
inline ComplexMatrix minus() { return 0.5 * (x() - Complex(0.0, 1.0) * y()); }

} // namespace pauli

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

inline double max_abs(const ComplexMatrix& a)
{
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double hermitian_defect(const ComplexMatrix& a)
{
    return max_abs(a - a.adjoint());
}

inline double unitary_defect(const ComplexMatrix& u)
{
    const auto n = u.cols();
    return max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n));
}

inline bool is_hermitian(const ComplexMatrix& a)
{
    if (a.rows() != a.cols()) return false;
    const double scale = std::max(max_abs(a), 1.0);
    return hermitian_defect(a) <= kHermitianTol * scale;
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol)
{
    return u.rows() == u.cols() && unitary_defect(u) <= tol;
}

inline void require_hermitian(const ComplexMatrix& h, const char* where)
{
    if (h.rows() != h.cols()) {
        throw LinalgError(std::string(where) + ": matrix is not square");
    }
    if (!is_hermitian(h)) {
        std::ostringstream msg;
        msg << where << ": matrix is not Hermitian (max |A - A^dagger| = "
            << hermitian_defect(h) << ")";
        throw LinalgError(msg.str());
    }
}

inline void require_unitary(const ComplexMatrix& u, const char* where)
{
    if (!is_unitary(u)) {
        std::ostringstream msg;
        msg << where << ": matrix is not unitary (max |U^dagger U - I| = "
            << (u.rows() == u.cols() ? unitary_defect(u) : -1.0) << ")";
        throw LinalgError(msg.str());
    }
}

/// Spectral decomposition H = V diag(lambda) V^dagger of a Hermitian matrix.
/// Holding it lets one Hamiltonian be exponentiated at many durations.
struct HermitianSpectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    explicit HermitianSpectrum(const ComplexMatrix& h)
    {
        require_hermitian(h, "HermitianSpectrum");
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
        if (solver.info() != Eigen::Success) {
            throw LinalgError("HermitianSpectrum: eigensolver did not converge");
        }
        eigenvalues = solver.eigenvalues();
        eigenvectors = solver.eigenvectors();
    }

    /// exp(-i H t)
    [[nodiscard]] ComplexMatrix propagator(double t) const
    {
        Eigen::VectorXcd phases(eigenvalues.size());
        for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
            phases[j] = std::polar(1.0, -eigenvalues[j] * t);
        }
        return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
    }
};

inline ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t)
{
    return HermitianSpectrum(h).propagator(t);
}

/// Principal logarithm of a unitary together with its eigenphases.
///
/// The unitary is normal, so its complex Schur form is diagonal and the Schur
/// vectors are an orthonormal eigenbasis even for degenerate phases. Phases
/// live on (-pi, pi]; an eigenvalue sitting at -1 maps to +pi.
struct UnitaryLog {
    RealVector phases;
    ComplexMatrix eigenvectors;
    bool near_branch_cut = false;

    static constexpr double kBranchCutFlag = 1e-6;

    explicit UnitaryLog(const ComplexMatrix& u)
    {
        require_unitary(u, "logm_unitary");
        Eigen::ComplexSchur<ComplexMatrix> schur(u);
        if (schur.info() != Eigen::Success) {
            throw LinalgError("logm_unitary: Schur decomposition did not converge");
        }
        const ComplexMatrix& t = schur.matrixT();
        eigenvectors = schur.matrixU();
        phases.resize(t.rows());
        for (Eigen::Index j = 0; j < t.rows(); ++j) {
            double phi = std::arg(t(j, j));
            if (phi <= -std::numbers::pi + 1e-15) phi = std::numbers::pi;
            if (std::numbers::pi - std::abs(phi) < kBranchCutFlag) near_branch_cut = true;
            phases[j] = phi;
        }
    }

    /// log U = V diag(i phi) V^dagger (anti-Hermitian).
    [[nodiscard]] ComplexMatrix log() const
    {
        Eigen::VectorXcd d(phases.size());
        for (Eigen::Index j = 0; j < phases.size(); ++j) d[j] = Complex(0.0, phases[j]);
        return eigenvectors * d.asDiagonal() * eigenvectors.adjoint();
    }

    /// exp(s log U), the geodesic from I (s = 0) to U (s = 1).
    [[nodiscard]] ComplexMatrix power(double s) const
    {
        Eigen::VectorXcd d(phases.size());
        for (Eigen::Index j = 0; j < phases.size(); ++j) d[j] = std::polar(1.0, s * phases[j]);
        return eigenvectors * d.asDiagonal() * eigenvectors.adjoint();
    }

    /// ||log U||_F, which equals the 2-norm of the phase vector.
    [[nodiscard]] double log_norm() const { return phases.norm(); }

    /// Generator H with exp(-i H tau) = U.
    [[nodiscard]] ComplexMatrix hamiltonian(double tau) const
    {
        Eigen::VectorXcd d(phases.size());
        for (Eigen::Index j = 0; j < phases.size(); ++j) d[j] = -phases[j] / tau;
        ComplexMatrix h = eigenvectors * d.asDiagonal() * eigenvectors.adjoint();
        return 0.5 * (h + h.adjoint());
    }
};

inline ComplexMatrix logm_unitary(const ComplexMatrix& u) { return UnitaryLog(u).log(); }

/// exp(G) for anti-Hermitian G, via the Hermitian path: G = iA gives
/// exp(G) = exp(-i A (-1)).
inline ComplexMatrix expm_antihermitian(const ComplexMatrix& g)
{
    const ComplexMatrix a = Complex(0.0, -1.0) * g;
    return expm_hermitian(0.5 * (a + a.adjoint()), -1.0);
}

inline std::size_t qubit_dimension(std::size_t n_qubits) { return std::size_t{1} << n_qubits; }

/// I (x) ... (x) op_a at site i (x) ... (x) op_b at site j (x) ... (x) I.
/// Site 0 is the leftmost tensor factor (most significant basis bit).
inline ComplexMatrix embed_two_site(const ComplexMatrix& op_a, const ComplexMatrix& op_b,
                                    std::size_t i, std::size_t j, std::size_t n_qubits)
{
    if (op_a.rows() != 2 || op_a.cols() != 2 || op_b.rows() != 2 || op_b.cols() != 2) {
        throw LinalgError("embed_two_site: site operators must be 2x2");
    }
    if (i >= j || j >= n_qubits) {
        std::ostringstream msg;
        msg << "embed_two_site: need 0 <= i < j < L, got i=" << i << " j=" << j
            << " L=" << n_qubits;
        throw LinalgError(msg.str());
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (std::size_t site = 0; site < n_qubits; ++site) {
        const ComplexMatrix& factor = site == i ? op_a : (site == j ? op_b : pauli::identity());
        out = kron(out, factor);
    }
    return out;
}

inline ComplexMatrix embed_one_site(const ComplexMatrix& op, std::size_t i, std::size_t n_qubits)
{
    if (i >= n_qubits) throw LinalgError("embed_one_site: site out of range");
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (std::size_t site = 0; site < n_qubits; ++site) {
        out = kron(out, site == i ? op : pauli::identity());
    }
    return out;
}

} // namespace sweetspot

#pragma once

#include "sweetspot/core/linalg.hpp"

#include <sstream>

namespace sweetspot {

struct DensityMatrix {
    ComplexMatrix rho;

    static DensityMatrix pure(const StateVector& psi) { return {psi * psi.adjoint()}; }

    [[nodiscard]] Eigen::Index dim() const { return rho.rows(); }
    [[nodiscard]] double trace() const { return rho.trace().real(); }
    [[nodiscard]] double purity() const { return (rho * rho).trace().real(); }

    void apply(const ComplexMatrix& u) { rho = u * rho * u.adjoint(); }

    [[nodiscard]] double min_eigenvalue() const
    {
        const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff();
    }

    void validate(double trace_tol = 1e-10, double eig_floor = -1e-9) const
    {
        if (rho.rows() != rho.cols()) throw LinalgError("DensityMatrix: not square");
        if (std::abs(trace() - 1.0) > trace_tol) {
            std::ostringstream msg;
            msg << "DensityMatrix: trace " << trace() << " differs from 1";
            throw LinalgError(msg.str());
        }
        require_hermitian(rho, "DensityMatrix");
        if (min_eigenvalue() < eig_floor) throw LinalgError("DensityMatrix: negative eigenvalue");
    }
};

} // namespace sweetspot

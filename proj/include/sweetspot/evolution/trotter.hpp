#pragma once

// Symmetric splitting for time-dependent noise. Each segment k is cut into
// N substeps of length dt = tau/N; substep n applies
//   exp(-i Hn(t_kn) dt/2) . R_k^(1/N) . exp(-i Hn(t_kn) dt/2)
// to the density matrix, with R_k^(1/N) = exp(log(R_k)/N) and
// t_kn = (k-1) tau + (n - 1/2) dt.

#include "sweetspot/circuits/sequence.hpp"
#include "sweetspot/evolution/density.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace sweetspot {

/// Noise Hamiltonian for (segment k, substep n), both zero-based.
using NoiseSchedule = std::function<ComplexMatrix(std::size_t segment, std::size_t substep)>;

inline constexpr std::size_t kDefaultTrotterSteps = 16;

/// Midpoint time t_kn of a substep (zero-based indices).
inline double substep_time(const GateSequence& seq, std::size_t segment, std::size_t substep,
                           std::size_t n_substeps)
{
    const double tau = seq.tau();
    return static_cast<double>(segment) * tau +
           (static_cast<double>(substep) + 0.5) * tau / static_cast<double>(n_substeps);
}

namespace detail {

inline std::vector<ComplexMatrix> fractional_unitaries(const GateSequence& seq, std::size_t n_substeps)
{
    std::vector<ComplexMatrix> roots;
    roots.reserve(seq.size());
    for (const auto& u : seq.unitaries) {
        roots.push_back(UnitaryLog(u).power(1.0 / static_cast<double>(n_substeps)));
    }
    return roots;
}

} // namespace detail

inline DensityMatrix evolve_trotter(const GateSequence& seq, const NoiseSchedule& noise_at,
                                    std::size_t n_substeps, DensityMatrix rho)
{
    if (n_substeps < 1) throw std::invalid_argument("evolve_trotter: need N >= 1");
    const double half_step = 0.5 * seq.tau() / static_cast<double>(n_substeps);
    const auto roots = detail::fractional_unitaries(seq, n_substeps);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        for (std::size_t n = 0; n < n_substeps; ++n) {
            const ComplexMatrix half = expm_hermitian(noise_at(k, n), half_step);
            rho.apply(half);
            rho.apply(roots[k]);
            rho.apply(half);
        }
    }
    rho.rho = 0.5 * (rho.rho + rho.rho.adjoint());
    return rho;
}

/// Constant-noise specialization: the half-step propagator is computed once.
inline DensityMatrix evolve_trotter(const GateSequence& seq, const ComplexMatrix& noise,
                                    std::size_t n_substeps, DensityMatrix rho)
{
    if (n_substeps < 1) throw std::invalid_argument("evolve_trotter: need N >= 1");
    const ComplexMatrix half = expm_hermitian(noise, 0.5 * seq.tau() / static_cast<double>(n_substeps));
    const auto roots = detail::fractional_unitaries(seq, n_substeps);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const ComplexMatrix step = half * roots[k] * half;
        for (std::size_t n = 0; n < n_substeps; ++n) rho.apply(step);
    }
    rho.rho = 0.5 * (rho.rho + rho.rho.adjoint());
    return rho;
}

/// Tr[R rho0 R^dagger rho_final]; the imaginary residue must vanish.
inline double trace_fidelity(const GateSequence& seq, const DensityMatrix& rho0, const DensityMatrix& rho_final)
{
    const ComplexMatrix r = seq.product();
    const Complex f = (r * rho0.rho * r.adjoint() * rho_final.rho).trace();
    if (std::abs(f.imag()) > 1e-10) {
        throw std::runtime_error("trace_fidelity: imaginary residue " + std::to_string(f.imag()));
    }
    return f.real();
}

inline double fidelity_trotter(const GateSequence& seq, const NoiseSchedule& noise_at,
                               std::size_t n_substeps, const StateVector& psi0)
{
    const auto rho0 = DensityMatrix::pure(psi0);
    return trace_fidelity(seq, rho0, evolve_trotter(seq, noise_at, n_substeps, rho0));
}

inline double fidelity_trotter(const GateSequence& seq, const ComplexMatrix& noise,
                               std::size_t n_substeps, const StateVector& psi0)
{
    const auto rho0 = DensityMatrix::pure(psi0);
    return trace_fidelity(seq, rho0, evolve_trotter(seq, noise, n_substeps, rho0));
}

} // namespace sweetspot

#pragma once

#include "sweetspot/circuits/sequence.hpp"
#include "sweetspot/device/hamiltonian.hpp"
#include "sweetspot/evolution/trotter.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sweetspot {

enum class EvolutionKind {
    QuasiStaticFactored,    // noise as one block exp(-i Hn T) after the ideal circuit
    QuasiStaticInterleaved, // exact exp(-i (H_k + Hn) tau) per segment
    Trotterized             // symmetric splitting on the density matrix
};

struct EvolutionMode {
    EvolutionKind kind = EvolutionKind::QuasiStaticFactored;
    std::size_t substeps = kDefaultTrotterSteps;
};

inline std::string_view to_string(EvolutionKind k)
{
    switch (k) {
    case EvolutionKind::QuasiStaticFactored: return "factored";
    case EvolutionKind::QuasiStaticInterleaved: return "interleaved";
    case EvolutionKind::Trotterized: return "trotter";
    }
    return "unknown";
}

inline EvolutionKind parse_evolution_kind(std::string_view s)
{
    if (s == "factored") return EvolutionKind::QuasiStaticFactored;
    if (s == "interleaved") return EvolutionKind::QuasiStaticInterleaved;
    if (s == "trotter") return EvolutionKind::Trotterized;
    throw std::invalid_argument("unknown evolution mode '" + std::string(s) +
                                "' (expected factored, interleaved or trotter)");
}

namespace detail {

inline void check_dims(const GateSequence& seq, const ComplexMatrix& noise, const StateVector& psi0)
{
    if (seq.dim() != noise.rows() || noise.rows() != noise.cols() || psi0.size() != seq.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch between sequence (" +
                                    std::to_string(seq.dim()) + "), noise (" +
                                    std::to_string(noise.rows()) + ") and state (" +
                                    std::to_string(psi0.size()) + ")");
    }
}

} // namespace detail

/// Segment generator H_k with exp(-i H_k tau) = R_k exactly.
inline ComplexMatrix segment_hamiltonian(const ComplexMatrix& r, double tau)
{
    return UnitaryLog(r).hamiltonian(tau);
}

/// Overlap <psi_ideal | psi_noisy> where psi_ideal = R psi0.
///
/// Factored: psi_noisy = exp(-i Hn T) R psi0.
/// Interleaved: psi_noisy = prod_k exp(-i (H_k + Hn) tau) psi0.
inline Complex noisy_overlap(const GateSequence& seq, const ComplexMatrix& noise, const StateVector& psi0,
                             EvolutionKind kind)
{
    detail::check_dims(seq, noise, psi0);
    const StateVector ideal = seq.product() * psi0;
    switch (kind) {
    case EvolutionKind::QuasiStaticFactored:
        return ideal.dot(expm_hermitian(noise, seq.total_time()) * ideal);
    case EvolutionKind::QuasiStaticInterleaved: {
        StateVector psi = psi0;
        const double tau = seq.tau();
        for (const auto& r : seq.unitaries) {
            psi = expm_hermitian(segment_hamiltonian(r, tau) + noise, tau) * psi;
        }
        return ideal.dot(psi);
    }
    case EvolutionKind::Trotterized: break;
    }
    throw std::invalid_argument("noisy_overlap: Trotterized mode has no pure-state overlap");
}

inline double fidelity_single(const GateSequence& seq, const ComplexMatrix& noise, const StateVector& psi0,
                              EvolutionMode mode = {})
{
    if (mode.kind == EvolutionKind::Trotterized) {
        detail::check_dims(seq, noise, psi0);
        return fidelity_trotter(seq, noise, mode.substeps, psi0);
    }
    return std::norm(noisy_overlap(seq, noise, psi0, mode.kind));
}

inline double fidelity_single(const GateSequence& seq, const RingTopology& topo, const NoiseDraw& draw,
                              const StateVector& psi0, EvolutionMode mode = {})
{
    return fidelity_single(seq, build_noise_hamiltonian(topo, draw), psi0, mode);
}

/// Factored-mode precomputation for one draw: spectral weights of
/// phi = R psi0, after which F(T) = |sum_j w_j exp(i lambda_j T)|^2 costs
/// O(dim) per duration.
class FactoredDraw {
public:
    FactoredDraw(const RingTopology& topo, const NoiseDraw& draw, const StateVector& ideal_state)
        : weights_(ParityBlockSpectrum(noise_hamiltonian_real(topo, draw)).weights(ideal_state))
    {
    }

    [[nodiscard]] double fidelity(double total_time) const
    {
        return std::norm(return_amplitude(weights_, total_time));
    }

private:
    ParityBlockSpectrum::Weights weights_;
};

/// Noise realization for (segment k, substep n), both zero-based.
using DrawSchedule = std::function<NoiseDraw(std::size_t segment, std::size_t substep)>;

inline NoiseSchedule noise_schedule(const RingTopology& topo, DrawSchedule draw_at)
{
    return [&topo, draw_at = std::move(draw_at)](std::size_t k, std::size_t n) {
        return build_noise_hamiltonian(topo, draw_at(k, n));
    };
}

inline double fidelity_trotter(const GateSequence& seq, const RingTopology& topo, DrawSchedule draw_at,
                               std::size_t n_substeps, const StateVector& psi0)
{
    return fidelity_trotter(seq, noise_schedule(topo, std::move(draw_at)), n_substeps, psi0);
}

} // namespace sweetspot

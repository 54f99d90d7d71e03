#pragma once

// Two-qubit toy model H = X(x)X + a Y(x)Y and its Gaussian-noise fidelity
// envelopes, used as closed-form ground truth for the simulator.

#include "sweetspot/core/linalg.hpp"
#include "sweetspot/core/parallel.hpp"
#include "sweetspot/core/rng.hpp"
#include "sweetspot/device/hamiltonian.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sweetspot {

struct ToyParams {
    double a = 10.0 / 11.0;
    double sigma = 0.0;
    double alpha = std::numbers::pi / 2.0; // t = alpha * lambda0 / J

    void validate() const
    {
        if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("ToyParams: a must lie in [0, 1]");
        if (!(sigma >= 0.0)) throw std::invalid_argument("ToyParams: sigma must be >= 0");
        if (!(alpha > 0.0)) throw std::invalid_argument("ToyParams: alpha must be > 0");
    }
};

enum class ToyState { GHZ, UpDown };

inline std::string_view to_string(ToyState s) { return s == ToyState::GHZ ? "ghz" : "updown"; }

inline ToyState parse_toy_state(std::string_view s)
{
    if (s == "ghz") return ToyState::GHZ;
    if (s == "updown") return ToyState::UpDown;
    throw std::invalid_argument("unknown toy state '" + std::string(s) + "' (expected ghz or updown)");
}

inline ComplexMatrix toy_hamiltonian(double a)
{
    return kron(pauli::x(), pauli::x()) + a * kron(pauli::y(), pauli::y());
}

struct ToyEigensystem {
    std::array<double, 4> eigenvalues;
    ComplexMatrix eigenvectors; // column k belongs to eigenvalues[k]
};

/// Eigenvalues in the order 1-a, -a-1, a-1, a+1, each with its Bell vector.
inline ToyEigensystem toy_eigensystem(double a)
{
    ToyEigensystem es;
    es.eigenvalues = {1.0 - a, -a - 1.0, a - 1.0, a + 1.0};
    es.eigenvectors = ComplexMatrix::Zero(4, 4);
    const double s = kInvSqrt2;
    es.eigenvectors(0, 0) = s; // (1,0,0,1)
    es.eigenvectors(3, 0) = s;
    es.eigenvectors(1, 1) = s; // (0,1,-1,0)
    es.eigenvectors(2, 1) = -s;
    es.eigenvectors(0, 2) = s; // (1,0,0,-1)
    es.eigenvectors(3, 2) = -s;
    es.eigenvectors(1, 3) = s; // (0,1,1,0)
    es.eigenvectors(2, 3) = s;
    return es;
}

inline double fidelity_ghz_analytic(double t, double sigma) { return std::exp(-sigma * sigma * t * t); }

inline double fidelity_updown_analytic(double t, double a, double sigma)
{
    const double c = std::cos(a * t);
    return c * c * std::exp(-sigma * sigma * t * t);
}

inline double analytic_vs_J(double j_over_lambda0, const ToyParams& p, ToyState state)
{
    if (!(j_over_lambda0 > 0.0)) throw std::invalid_argument("analytic_vs_J: J/lambda0 must be > 0");
    const double t = p.alpha / j_over_lambda0;
    return state == ToyState::GHZ ? fidelity_ghz_analytic(t, p.sigma) : fidelity_updown_analytic(t, p.a, p.sigma);
}

// Ensemble simulation of the envelopes.
//
// The coherent part is the exchange coupling a (S+S- + S-S+) on one CPW
// chord, the two-site instance of the device noise Hamiltonian; it keeps
// |GHZ> stationary and rotates |01> at frequency a. Each draw adds a uniform
// energy shift eps*I with eps ~ N(0, sigma^2). The target is the identity, so
// the fidelity is |E[<psi0|U|psi0>]|^2, estimated without bias from disjoint
// replica pairs as Re(A_2s conj(A_2s+1)).

inline constexpr std::uint64_t kToyStreamTag = 0x544f59ULL;

inline RingTopology toy_topology()
{
    RingTopology topo;
    topo.n_qubits = 2;
    topo.chords = {{0, 1}};
    return topo;
}

inline StateVector toy_state(ToyState s)
{
    StateVector psi = StateVector::Zero(4);
    if (s == ToyState::GHZ) {
        psi(0) = kInvSqrt2;
        psi(3) = kInvSqrt2;
    } else {
        psi(1) = 1.0; // |up down>
    }
    return psi;
}

struct ToyEnsembleSpec {
    ToyParams params;
    std::size_t n_samples = 1500; // rounded down to an even count
    std::uint64_t master_seed = 0;
};

inline MeanEstimate toy_ensemble_fidelity(double t, ToyState state, const ToyEnsembleSpec& spec)
{
    spec.params.validate();
    const std::size_t pairs = spec.n_samples / 2;
    if (pairs < 2) throw std::invalid_argument("toy_ensemble_fidelity: need at least 4 samples");
    const RingTopology topo = toy_topology();
    NoiseDraw coherent = NoiseDraw::zeros(topo);
    coherent.lambdaK[0] = spec.params.a;
    const ComplexMatrix h0 = build_noise_hamiltonian(topo, coherent);
    const StateVector psi0 = toy_state(state);

    auto amplitude = [&](std::size_t sample) {
        auto rng = SeededRng::for_stream(spec.master_seed, {kToyStreamTag, sample});
        const double eps = rng.normal(0.0, spec.params.sigma);
        const ComplexMatrix h = h0 + eps * ComplexMatrix::Identity(4, 4);
        return psi0.dot(expm_hermitian(h, t) * psi0);
    };
    std::vector<double> est(pairs);
    parallel_for(pairs, [&](std::size_t s) {
        est[s] = (amplitude(2 * s) * std::conj(amplitude(2 * s + 1))).real();
    });
    return mean_and_stderr(est);
}

} // namespace sweetspot

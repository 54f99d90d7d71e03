#pragma once

#include "sweetspot/core/linalg.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace sweetspot {

enum class InitialStateKind { Product1, Singlet, GHZ };

inline std::string_view to_string(InitialStateKind k)
{
    switch (k) {
    case InitialStateKind::Product1: return "product1";
    case InitialStateKind::Singlet: return "singlet";
    case InitialStateKind::GHZ: return "ghz";
    }
    return "unknown";
}

inline InitialStateKind parse_state_kind(std::string_view s)
{
    if (s == "product1") return InitialStateKind::Product1;
    if (s == "singlet") return InitialStateKind::Singlet;
    if (s == "ghz") return InitialStateKind::GHZ;
    throw std::invalid_argument("unknown state kind '" + std::string(s) +
                                "' (expected product1, singlet or ghz)");
}

/// Basis order: index bit (L-1-q) is qubit q, bit value 0 is spin up.
///   Product1  |up down down ...>
///   Singlet   (|up down> - |down up>)/sqrt2 (x) |down ...>
///   GHZ       (|up ... up> + |down ... down>)/sqrt2
inline StateVector prepare_state(InitialStateKind kind, std::size_t n_qubits)
{
    if (n_qubits < 2) throw std::invalid_argument("prepare_state: need L >= 2");
    const auto dim = static_cast<Eigen::Index>(qubit_dimension(n_qubits));
    StateVector psi = StateVector::Zero(dim);
    const Eigen::Index high = Eigen::Index{1} << (n_qubits - 1);
    const Eigen::Index all_down = dim - 1;
    switch (kind) {
    case InitialStateKind::Product1:
        psi[all_down - high] = 1.0;
        break;
    case InitialStateKind::Singlet: {
        const Eigen::Index second = Eigen::Index{1} << (n_qubits - 2);
        psi[all_down - high] = kInvSqrt2;
        psi[all_down - second] = -kInvSqrt2;
        break;
    }
    case InitialStateKind::GHZ:
        psi[0] = kInvSqrt2;
        psi[all_down] = kInvSqrt2;
        break;
    }
    return psi;
}

} // namespace sweetspot

#pragma once

#include "sweetspot/core/linalg.hpp"
#include "sweetspot/device/topology.hpp"

#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sweetspot {

/// SWAP duration at coupling J (lambda0 units).
inline double swap_duration(double coupling)
{
    if (!(coupling > 0.0)) throw std::invalid_argument("swap_duration: coupling must be > 0");
    return std::numbers::pi / (4.0 * coupling);
}

/// Ordered ideal segment unitaries R_1 ... R_K, each lasting tau = pi/(4J).
/// The unitaries do not depend on J, so a sweep rebinds only the coupling.
struct GateSequence {
    std::vector<ComplexMatrix> unitaries;
    double coupling = 1.0;
    std::vector<QubitPair> swap_edges; // filled for SWAP protocols, empty otherwise

    [[nodiscard]] std::size_t size() const { return unitaries.size(); }
    [[nodiscard]] double tau() const { return swap_duration(coupling); }
    [[nodiscard]] double total_time() const { return static_cast<double>(size()) * tau(); }
    [[nodiscard]] Eigen::Index dim() const { return unitaries.empty() ? 0 : unitaries.front().rows(); }

    /// R = R_K ... R_1 (R_1 acts first).
    [[nodiscard]] ComplexMatrix product() const
    {
        if (unitaries.empty()) throw std::logic_error("GateSequence::product: empty sequence");
        ComplexMatrix r = unitaries.front();
        for (std::size_t k = 1; k < unitaries.size(); ++k) r = unitaries[k] * r;
        return r;
    }

    [[nodiscard]] GateSequence with_coupling(double j) const
    {
        GateSequence out = *this;
        out.coupling = j;
        return out;
    }

    void validate() const
    {
        if (unitaries.empty()) throw std::invalid_argument("GateSequence: no segments");
        swap_duration(coupling);
        for (std::size_t k = 0; k < unitaries.size(); ++k) {
            if (unitaries[k].rows() != dim() || unitaries[k].cols() != dim()) {
                throw std::invalid_argument("GateSequence: segment " + std::to_string(k) +
                                            " has mismatched dimension");
            }
            require_unitary(unitaries[k], "GateSequence segment");
        }
    }
};

/// Exact SWAP permutation of qubits i and j in an L-qubit register.
inline ComplexMatrix swap_unitary(std::size_t i, std::size_t j, std::size_t n_qubits)
{
    if (i == j || i >= n_qubits || j >= n_qubits) {
        throw std::invalid_argument("swap_unitary: invalid qubit pair");
    }
    const auto dim = static_cast<Eigen::Index>(qubit_dimension(n_qubits));
    const std::uint64_t mi = std::uint64_t{1} << (n_qubits - 1 - i);
    const std::uint64_t mj = std::uint64_t{1} << (n_qubits - 1 - j);
    ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        auto basis = static_cast<std::uint64_t>(b);
        const bool bi = basis & mi;
        const bool bj = basis & mj;
        if (bi != bj) basis ^= mi | mj;
        u(static_cast<Eigen::Index>(basis), b) = 1.0;
    }
    return u;
}

/// Route taken by the travelling excitation. Both policies run L-1 forward
/// swaps and then retrace the first L-2 of them, giving K = 2L-3 segments.
enum class SwapItinerary {
    ForwardBack,       // (0,1), (1,2), ..., (L-2,L-1), then back to (0,1)
    ReverseForwardBack // (0,L-1), (L-1,L-2), ..., (2,1) through the wrap edge, then back
};

inline std::string_view to_string(SwapItinerary it)
{
    return it == SwapItinerary::ForwardBack ? "forward_back" : "reverse_forward_back";
}

inline SwapItinerary parse_itinerary(std::string_view s)
{
    if (s == "forward_back") return SwapItinerary::ForwardBack;
    if (s == "reverse_forward_back") return SwapItinerary::ReverseForwardBack;
    throw std::invalid_argument("unknown itinerary '" + std::string(s) + "'");
}

inline std::vector<QubitPair> swap_itinerary(std::size_t n_qubits, SwapItinerary policy)
{
    std::vector<QubitPair> forward;
    for (std::size_t s = 0; s + 1 < n_qubits; ++s) {
        if (policy == SwapItinerary::ForwardBack) {
            forward.emplace_back(s, s + 1);
        } else {
            const std::size_t a = (n_qubits - s) % n_qubits;
            const std::size_t b = n_qubits - s - 1;
            forward.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::vector<QubitPair> route = forward;
    for (std::size_t s = forward.size() - 1; s-- > 0;) route.push_back(forward[s]);
    return route;
}

inline GateSequence swap_sequence(std::size_t n_qubits, double coupling,
                                  SwapItinerary policy = SwapItinerary::ForwardBack)
{
    if (n_qubits < 3) throw std::invalid_argument("swap_sequence: need L >= 3");
    GateSequence seq;
    seq.coupling = coupling;
    seq.swap_edges = swap_itinerary(n_qubits, policy);
    for (const auto& [i, j] : seq.swap_edges) seq.unitaries.push_back(swap_unitary(i, j, n_qubits));
    return seq;
}

inline std::size_t default_segment_count(std::size_t n_qubits) { return 2 * n_qubits - 3; }

} // namespace sweetspot

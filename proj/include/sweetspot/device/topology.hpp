#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sweetspot {

using QubitPair = std::pair<std::size_t, std::size_t>;

/// Qubit ring: cavity couplings join ring neighbours, coplanar-waveguide
/// couplings join every non-adjacent pair. Pairs are stored with first < second.
struct RingTopology {
    std::size_t n_qubits = 0;
    std::vector<QubitPair> edges;
    std::vector<QubitPair> chords;

    [[nodiscard]] bool is_edge(std::size_t i, std::size_t j) const
    {
        const QubitPair p{std::min(i, j), std::max(i, j)};
        return std::find(edges.begin(), edges.end(), p) != edges.end();
    }
};

inline RingTopology build_topology(std::size_t n_qubits)
{
    if (n_qubits < 3) {
        throw std::invalid_argument("build_topology: ring needs L >= 3, got L=" +
                                    std::to_string(n_qubits));
    }
    RingTopology topo;
    topo.n_qubits = n_qubits;
    for (std::size_t i = 0; i < n_qubits; ++i) {
        const std::size_t j = (i + 1) % n_qubits;
        topo.edges.emplace_back(std::min(i, j), std::max(i, j));
    }
    for (std::size_t i = 0; i < n_qubits; ++i) {
        for (std::size_t j = i + 1; j < n_qubits; ++j) {
            if (!topo.is_edge(i, j)) topo.chords.emplace_back(i, j);
        }
    }
    return topo;
}

} // namespace sweetspot

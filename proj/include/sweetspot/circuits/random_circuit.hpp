#pragma once

#include "sweetspot/circuits/distance.hpp"
#include "sweetspot/circuits/sequence.hpp"

namespace sweetspot {

/// Speed-limit bound on ||log R_k||_F: the principal-log norm of the
/// two-qubit SWAP, whose single -1 eigenvalue gives exactly pi.
inline double speed_limit_bound()
{
    static const double bound = UnitaryLog(swap_unitary(0, 1, 2)).log_norm();
    return bound;
}

struct ScaledSegment {
    ComplexMatrix unitary;
    double alpha = 1.0;
};

/// Haar candidate pulled toward the identity so that ||log R||_F <= bound:
/// R = exp(alpha log R~), alpha = min(bound / ||log R~||_F, 1).
inline ScaledSegment speed_limited_unitary(std::size_t dim, SeededRng& rng,
                                           double bound = speed_limit_bound())
{
    const ComplexMatrix candidate = haar_unitary(dim, rng);
    const UnitaryLog log(candidate);
    const double norm = log.log_norm();
    ScaledSegment out;
    out.alpha = norm > 0.0 ? std::min(bound / norm, 1.0) : 1.0;
    out.unitary = out.alpha < 1.0 ? log.power(out.alpha) : candidate;
    return out;
}

inline GateSequence random_sequence(std::size_t n_qubits, double coupling, std::size_t n_segments,
                                    SeededRng& rng)
{
    if (n_segments < 1) throw std::invalid_argument("random_sequence: need K >= 1");
    GateSequence seq;
    seq.coupling = coupling;
    for (std::size_t k = 0; k < n_segments; ++k) {
        seq.unitaries.push_back(speed_limited_unitary(qubit_dimension(n_qubits), rng).unitary);
    }
    return seq;
}

/// K equal segments R^(1/K) whose product is R.
inline GateSequence split_into_segments(const ComplexMatrix& r, std::size_t n_segments, double coupling)
{
    if (n_segments < 1) throw std::invalid_argument("split_into_segments: need K >= 1");
    const UnitaryLog log(r);
    const ComplexMatrix root = log.power(1.0 / static_cast<double>(n_segments));
    GateSequence seq;
    seq.coupling = coupling;
    seq.unitaries.assign(n_segments, root);
    return seq;
}

/// Random circuit whose total operation sits at distance target_D from I,
/// delivered as K = 2L-3 equal segments.
inline GateSequence random_sequence_with_distance(std::size_t n_qubits, double coupling, double target_D,
                                                  SeededRng& rng, std::size_t n_segments = 0)
{
    if (n_segments == 0) n_segments = default_segment_count(n_qubits);
    const ComplexMatrix r = unitary_with_distance(qubit_dimension(n_qubits), target_D, rng);
    return split_into_segments(r, n_segments, coupling);
}

} // namespace sweetspot

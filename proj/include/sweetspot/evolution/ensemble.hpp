#pragma once

#include "sweetspot/core/parallel.hpp"
#include "sweetspot/evolution/fidelity.hpp"
#include "sweetspot/noise/sampler.hpp"

#include <vector>

namespace sweetspot {

/// Per-sample fidelities of seq across draws 0..n_samples-1 of spec. One
/// draw is evaluated per work item; slot i always holds draw i.
inline std::vector<double> sample_fidelities(const GateSequence& seq, const NoiseSpec& spec,
                                             const RingTopology& topo, const StateVector& psi0,
                                             EvolutionMode mode = {})
{
    spec.validate();
    std::vector<double> out(spec.n_samples);
    if (mode.kind == EvolutionKind::QuasiStaticFactored) {
        const StateVector ideal = seq.product() * psi0;
        const double total = seq.total_time();
        parallel_for(spec.n_samples, [&](std::size_t i) {
            out[i] = FactoredDraw(topo, sample_noise(spec, topo, i), ideal).fidelity(total);
        });
    } else {
        parallel_for(spec.n_samples, [&](std::size_t i) {
            out[i] = fidelity_single(seq, topo, sample_noise(spec, topo, i), psi0, mode);
        });
    }
    return out;
}

inline MeanEstimate mean_fidelity(const GateSequence& seq, const NoiseSpec& spec, const RingTopology& topo,
                                  const StateVector& psi0, EvolutionMode mode = {})
{
    const auto f = sample_fidelities(seq, spec, topo, psi0, mode);
    return mean_and_stderr(f);
}

/// Factored-mode fidelities for one draw per row and one total duration per
/// column; each draw is diagonalized once for all durations.
inline std::vector<std::vector<double>> factored_fidelity_table(const ComplexMatrix& circuit,
                                                                const std::vector<double>& durations,
                                                                const NoiseSpec& spec,
                                                                const RingTopology& topo,
                                                                const StateVector& psi0)
{
    spec.validate();
    const StateVector ideal = circuit * psi0;
    std::vector<std::vector<double>> table(spec.n_samples);
    parallel_for(spec.n_samples, [&](std::size_t i) {
        const FactoredDraw fd(topo, sample_noise(spec, topo, i), ideal);
        auto& row = table[i];
        row.resize(durations.size());
        for (std::size_t g = 0; g < durations.size(); ++g) row[g] = fd.fidelity(durations[g]);
    });
    return table;
}

} // namespace sweetspot

#pragma once

#include "sweetspot/core/rng.hpp"
#include "sweetspot/device/hamiltonian.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sweetspot {

inline constexpr std::size_t kDefaultSamples = 1500;

struct NoiseSpec {
    DeviceParams params;
    std::size_t n_samples = kDefaultSamples;
    std::uint64_t master_seed = 0;

    void validate() const
    {
        params.validate();
        if (n_samples < 1) throw std::invalid_argument("NoiseSpec: n_samples must be >= 1");
    }
};

// Stream tag separating noise streams from circuit/ML streams of the same seed.
inline constexpr std::uint64_t kNoiseStreamTag = 0x4e4f495345ULL;

/// Quasi-static draw for one Monte-Carlo sample, a pure function of
/// (master_seed, sample_index). Edge couplings are drawn first, then chords;
/// the qubit frequency shift is the fixed constant.
inline NoiseDraw sample_noise(const NoiseSpec& spec, const RingTopology& topo, std::size_t sample_index)
{
    if (sample_index >= spec.n_samples) {
        throw std::out_of_range("sample_noise: index " + std::to_string(sample_index) +
                                " >= n_samples " + std::to_string(spec.n_samples));
    }
    auto rng = SeededRng::for_stream(spec.master_seed, {kNoiseStreamTag, sample_index});
    NoiseDraw draw;
    draw.delta_omega.assign(topo.n_qubits, spec.params.delta_omega);
    draw.lambdaJ.resize(topo.edges.size());
    for (double& v : draw.lambdaJ) v = rng.normal(spec.params.lambdaJ_mean, spec.params.sigmaJ);
    draw.lambdaK.resize(topo.chords.size());
    for (double& v : draw.lambdaK) v = rng.normal(spec.params.lambdaK_mean, spec.params.sigmaK);
    return draw;
}

} // namespace sweetspot

#pragma once

#include "sweetspot/circuits/random_circuit.hpp"
#include "sweetspot/circuits/states.hpp"
#include "sweetspot/evolution/ensemble.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sweetspot {

enum class CircuitKind {
    Swap,          // SWAP protocol of K = 2L-3 segments
    RandomTargetD, // random total unitary at a target distance to identity, split into K segments
    RandomSpeedLimited, // K independent speed-limited Haar segments
    Replay         // externally supplied sequence
};

inline std::string_view to_string(CircuitKind k)
{
    switch (k) {
    case CircuitKind::Swap: return "swap";
    case CircuitKind::RandomTargetD: return "random_target_d";
    case CircuitKind::RandomSpeedLimited: return "random";
    case CircuitKind::Replay: return "replay";
    }
    return "unknown";
}

inline CircuitKind parse_circuit_kind(std::string_view s)
{
    if (s == "swap") return CircuitKind::Swap;
    if (s == "random_target_d") return CircuitKind::RandomTargetD;
    if (s == "random") return CircuitKind::RandomSpeedLimited;
    if (s == "replay") return CircuitKind::Replay;
    throw std::invalid_argument("unknown circuit kind '" + std::string(s) +
                                "' (expected swap, random, random_target_d or replay)");
}

struct CircuitSpec {
    CircuitKind kind = CircuitKind::Swap;
    double target_D = 0.5;
    std::size_t n_segments = 0; // 0 selects 2L-3
    SwapItinerary itinerary = SwapItinerary::ForwardBack;
    std::uint64_t circuit_index = 0; // selects among random circuits of one seed
    std::optional<GateSequence> replay;
};

inline constexpr std::uint64_t kCircuitStreamTag = 0x43495243ULL;

/// Ideal sequence for a circuit spec at coupling J. Random circuits draw from
/// a stream keyed by (seed, circuit_index) so every grid point sees the same
/// unitaries.
inline GateSequence build_circuit(const CircuitSpec& spec, std::size_t n_qubits, double coupling,
                                  std::uint64_t seed)
{
    const std::size_t k = spec.n_segments ? spec.n_segments : default_segment_count(n_qubits);
    auto rng = SeededRng::for_stream(seed, {kCircuitStreamTag, spec.circuit_index});
    switch (spec.kind) {
    case CircuitKind::Swap: return swap_sequence(n_qubits, coupling, spec.itinerary);
    case CircuitKind::RandomTargetD:
        return random_sequence_with_distance(n_qubits, coupling, spec.target_D, rng, k);
    case CircuitKind::RandomSpeedLimited: return random_sequence(n_qubits, coupling, k, rng);
    case CircuitKind::Replay:
        if (!spec.replay) throw std::invalid_argument("replay circuit requested without a sequence");
        if (spec.replay->dim() != static_cast<Eigen::Index>(qubit_dimension(n_qubits))) {
            throw std::invalid_argument("replay sequence dimension does not match L");
        }
        return spec.replay->with_coupling(coupling);
    }
    throw std::logic_error("build_circuit: unhandled kind");
}

struct SweepScenario {
    std::size_t n_qubits = 4;
    InitialStateKind state = InitialStateKind::Product1;
    CircuitSpec circuit;
    DeviceParams params;
    std::vector<double> grid; // J / lambda0, strictly increasing and positive
    std::size_t n_samples = kDefaultSamples;
    std::uint64_t master_seed = 0;
    EvolutionMode mode;

    void validate() const
    {
        params.validate();
        if (grid.empty()) throw std::invalid_argument("SweepScenario: empty grid");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
                throw std::invalid_argument("SweepScenario: grid must be positive and strictly increasing");
            }
        }
        if (n_samples < 1) throw std::invalid_argument("SweepScenario: n_samples must be >= 1");
    }

    [[nodiscard]] NoiseSpec noise_spec() const { return {params, n_samples, master_seed}; }
};

struct SweepPoint {
    double j_over_lambda0 = 0.0;
    double infidelity_mean = 0.0;
    double infidelity_stderr = 0.0;
};

struct SweepResult {
    SweepScenario scenario;
    std::vector<SweepPoint> points;

    [[nodiscard]] std::vector<double> couplings() const
    {
        std::vector<double> out;
        for (const auto& p : points) out.push_back(p.j_over_lambda0);
        return out;
    }
    [[nodiscard]] std::vector<double> infidelities() const
    {
        std::vector<double> out;
        for (const auto& p : points) out.push_back(p.infidelity_mean);
        return out;
    }
};

inline std::vector<double> log_grid(double lo, double hi, std::size_t points)
{
    if (!(lo > 0.0) || !(hi > lo) || points < 2) {
        throw std::invalid_argument("log_grid: need 0 < lo < hi and at least two points");
    }
    std::vector<double> g(points);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

inline SweepResult run_sweep(const SweepScenario& scn, const ProgressFn& progress = {})
{
    scn.validate();
    const RingTopology topo = build_topology(scn.n_qubits);
    const StateVector psi0 = prepare_state(scn.state, scn.n_qubits);
    const NoiseSpec spec = scn.noise_spec();
    const GateSequence base = build_circuit(scn.circuit, scn.n_qubits, scn.grid.front(), scn.master_seed);

    SweepResult res;
    res.scenario = scn;
    res.points.resize(scn.grid.size());
    std::vector<double> infid(spec.n_samples);
    auto reduce = [&](std::size_t g) {
        const MeanEstimate m = mean_and_stderr(infid);
        res.points[g] = {scn.grid[g], m.mean, m.std_error};
    };

    if (scn.mode.kind == EvolutionKind::QuasiStaticFactored) {
        std::vector<double> durations;
        for (double j : scn.grid) durations.push_back(base.with_coupling(j).total_time());
        const auto table = factored_fidelity_table(base.product(), durations, spec, topo, psi0);
        for (std::size_t g = 0; g < scn.grid.size(); ++g) {
            for (std::size_t i = 0; i < spec.n_samples; ++i) infid[i] = 1.0 - table[i][g];
            reduce(g);
        }
        if (progress) progress(scn.grid.size(), scn.grid.size());
        return res;
    }
    for (std::size_t g = 0; g < scn.grid.size(); ++g) {
        const auto f = sample_fidelities(base.with_coupling(scn.grid[g]), spec, topo, psi0, scn.mode);
        for (std::size_t i = 0; i < spec.n_samples; ++i) infid[i] = 1.0 - f[i];
        reduce(g);
        if (progress) progress(g + 1, scn.grid.size());
    }
    return res;
}

} // namespace sweetspot

#pragma once

#include "sweetspot/sweep/sweet_spot.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sweetspot {

struct GridSpec {
    double lo = 1.0;
    double hi = 1000.0;
    std::size_t points = 120;

    [[nodiscard]] std::vector<double> values() const { return log_grid(lo, hi, points); }
};

inline std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    if (n == 0) throw std::invalid_argument("linspace: n must be >= 1");
    if (n == 1) return {lo};
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    v.back() = hi;
    return v;
}

struct DatasetSpec {
    std::vector<std::size_t> L_values{4, 6, 8};
    std::vector<double> lambdaK_values = linspace(3.0, 20.0, 8);     // lambda_K / lambda0
    std::vector<double> sigma_ratios = linspace(0.01, 0.1, 6);       // sigma_K / lambda_K
    DeviceParams base;     // lambdaJ, sigmaJ and delta_omega are taken from here
    GridSpec grid;
    double window_lo = kDefaultWindowLo;
    double window_hi = kDefaultWindowHi;
    std::size_t n_samples = kDefaultSamples;
    std::uint64_t master_seed = 0;
    InitialStateKind state = InitialStateKind::Product1;
    EvolutionMode mode;

    void validate() const
    {
        if (L_values.empty() || lambdaK_values.empty() || sigma_ratios.empty()) {
            throw std::invalid_argument("DatasetSpec: parameter ranges must be non-empty");
        }
        for (double r : sigma_ratios) {
            if (!(r >= 0.0)) throw std::invalid_argument("DatasetSpec: sigma ratios must be >= 0");
        }
        base.validate();
    }

    [[nodiscard]] std::size_t row_count() const
    {
        return L_values.size() * lambdaK_values.size() * sigma_ratios.size();
    }
};

struct DatasetRow {
    std::size_t L = 0;
    double lambdaK = 0.0;     // lambda_K / lambda0
    double sigma_ratio = 0.0; // sigma_K / lambda_K
    double j_star = 0.0;
    double infidelity_star = 0.0;
    bool boundary = false;
    std::vector<double> secondary_minima;
    std::uint64_t seed = 0; // master seed of the row's sweep
};

inline constexpr std::uint64_t kDatasetStreamTag = 0x44415441ULL;

/// The sweep scenario behind row (iL, iK, iS); rerunning it reproduces the row.
inline SweepScenario dataset_scenario(const DatasetSpec& spec, std::size_t iL, std::size_t iK, std::size_t iS)
{
    SweepScenario scn;
    scn.n_qubits = spec.L_values.at(iL);
    scn.state = spec.state;
    scn.params = spec.base;
    scn.params.lambdaK_mean = spec.lambdaK_values.at(iK);
    scn.params.sigmaK = spec.sigma_ratios.at(iS) * scn.params.lambdaK_mean;
    scn.grid = spec.grid.values();
    scn.n_samples = spec.n_samples;
    scn.master_seed = derive_seed(spec.master_seed, {kDatasetStreamTag, iL, iK, iS});
    scn.mode = spec.mode;
    return scn;
}

/// Cartesian sweep, L outermost and sigma innermost.
inline std::vector<DatasetRow> generate_dataset(const DatasetSpec& spec, const ProgressFn& progress = {})
{
    spec.validate();
    std::vector<DatasetRow> rows;
    rows.reserve(spec.row_count());
    for (std::size_t iL = 0; iL < spec.L_values.size(); ++iL) {
        for (std::size_t iK = 0; iK < spec.lambdaK_values.size(); ++iK) {
            for (std::size_t iS = 0; iS < spec.sigma_ratios.size(); ++iS) {
                const SweepScenario scn = dataset_scenario(spec, iL, iK, iS);
                const SweetSpot spot = find_sweet_spot(run_sweep(scn), spec.window_lo, spec.window_hi);
                rows.push_back({scn.n_qubits, spec.lambdaK_values[iK], spec.sigma_ratios[iS], spot.j_star,
                                spot.infidelity_star, spot.boundary, spot.secondary_minima, scn.master_seed});
                if (progress) progress(rows.size(), spec.row_count());
            }
        }
    }
    return rows;
}

} // namespace sweetspot

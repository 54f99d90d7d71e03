#pragma once

#include "sweetspot/analytic/toy_model.hpp"
#include "sweetspot/io/csv.hpp"
#include "sweetspot/ml/train.hpp"
#include "sweetspot/sweep/dataset.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace sweetspot::io {

inline std::string format_bool(bool b) { return b ? "true" : "false"; }

inline bool parse_bool(std::string_view s)
{
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw FormatError("not a boolean: '" + std::string(s) + "'");
}

/// Semicolon-joined list, kept inside one CSV field.
inline std::string format_list(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + format_double(v[i]);
    return out;
}

inline std::string sweep_csv(const SweepResult& res, const Provenance& prov)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : res.points) {
        rows.push_back({format_double(p.j_over_lambda0), format_double(p.infidelity_mean),
                        format_double(p.infidelity_stderr)});
    }
    std::ostringstream os;
    write_csv(os, prov, {"j_over_lambda0", "infidelity_mean", "infidelity_stderr"}, rows);
    return os.str();
}

struct SweepCurve {
    std::vector<double> couplings;
    std::vector<double> infidelity;
    std::vector<double> stderr_values;
};

inline SweepCurve read_sweep_csv(const CsvTable& t)
{
    SweepCurve c{t.numbers("j_over_lambda0"), t.numbers("infidelity_mean"), {}};
    if (std::find(t.columns.begin(), t.columns.end(), "infidelity_stderr") != t.columns.end()) {
        c.stderr_values = t.numbers("infidelity_stderr");
    }
    for (std::size_t i = 0; i < c.couplings.size(); ++i) {
        if (!(c.couplings[i] > 0.0) || (i > 0 && !(c.couplings[i] > c.couplings[i - 1]))) {
            throw FormatError("row " + std::to_string(i + 1) + ": j_over_lambda0 must be positive and increasing");
        }
    }
    if (c.couplings.empty()) throw FormatError("sweep CSV has no data rows");
    return c;
}

inline std::string sweetspot_csv(const SweetSpot& s, const Provenance& prov)
{
    std::ostringstream os;
    write_csv(os, prov, {"j_star", "infidelity_star", "boundary_flag", "window_lo", "window_hi", "secondary_minima"},
              {{format_double(s.j_star), format_double(s.infidelity_star), format_bool(s.boundary),
                format_double(s.window_lo), format_double(s.window_hi), format_list(s.secondary_minima)}});
    return os.str();
}

inline const std::vector<std::string> kDatasetColumns{
    "L", "lambdaK_over_lambda0", "sigmaK_over_lambdaK", "jstar_over_lambda0", "infidelity_star",
    "boundary_flag", "secondary_minima", "seed", "grid_lo", "grid_hi", "grid_points", "n_samples"};

inline std::string dataset_csv(const std::vector<DatasetRow>& rows, const DatasetSpec& spec, const Provenance& prov)
{
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows) {
        out.push_back({std::to_string(r.L), format_double(r.lambdaK), format_double(r.sigma_ratio),
                       format_double(r.j_star), format_double(r.infidelity_star), format_bool(r.boundary),
                       format_list(r.secondary_minima), std::to_string(r.seed), format_double(spec.grid.lo),
                       format_double(spec.grid.hi), std::to_string(spec.grid.points), std::to_string(spec.n_samples)});
    }
    std::ostringstream os;
    write_csv(os, prov, kDatasetColumns, out);
    return os.str();
}

inline std::vector<ml::LabeledRow> read_dataset_csv(const CsvTable& t)
{
    const auto L = t.numbers("L");
    const auto k = t.numbers("lambdaK_over_lambda0");
    const auto s = t.numbers("sigmaK_over_lambdaK");
    const auto j = t.numbers("jstar_over_lambda0");
    const auto f = t.numbers("infidelity_star");
    std::vector<ml::LabeledRow> rows;
    for (std::size_t i = 0; i < L.size(); ++i) {
        if (!(j[i] > 0.0)) throw FormatError("row " + std::to_string(i + 1) + ": jstar_over_lambda0 must be > 0");
        rows.push_back({{L[i], k[i], s[i]}, {j[i], f[i]}});
    }
    return rows;
}

inline std::string history_csv(const std::vector<ml::EpochMetrics>& history, const Provenance& prov)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto& h : history) {
        rows.push_back({std::to_string(h.epoch), format_double(h.train_mse), format_double(h.val_mse),
                        format_double(h.r2_jstar), format_double(h.r2_infid)});
    }
    std::ostringstream os;
    write_csv(os, prov, {"epoch", "train_mse", "val_mse", "r2_jstar", "r2_infid"}, rows);
    return os.str();
}

inline std::string analytic_csv(const std::vector<double>& grid, const ToyParams& p, const Provenance& prov)
{
    std::vector<std::vector<std::string>> rows;
    for (double j : grid) {
        rows.push_back({format_double(j), format_double(p.alpha / j),
                        format_double(analytic_vs_J(j, p, ToyState::GHZ)),
                        format_double(analytic_vs_J(j, p, ToyState::UpDown))});
    }
    std::ostringstream os;
    write_csv(os, prov, {"j_over_lambda0", "t", "fidelity_ghz", "fidelity_updown"}, rows,
              {"a=" + format_double(p.a) + " sigma=" + format_double(p.sigma) + " alpha=" + format_double(p.alpha)});
    return os.str();
}

} // namespace sweetspot::io

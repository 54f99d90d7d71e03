#pragma once

// JSON run configuration. Every key has a default; unknown keys and type
// mismatches are rejected with the offending field path. The merged document
// (defaults plus overrides) is echoed into outputs and hashed for provenance.

#include "sweetspot/io/csv.hpp"
#include "sweetspot/io/tables.hpp"

#include <json.hpp>

#include <string>

namespace sweetspot::io {

using Json = nlohmann::ordered_json;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Json default_config_json()
{
    return Json::parse(R"({
  "device": {"L": 4, "lambdaK_mean": 1.0, "lambdaJ_mean": 0.1, "sigmaK": 0.01, "sigmaJ": 0.001,
             "delta_omega": 0.0001},
  "circuit": {"kind": "swap", "target_D": 0.5, "itinerary": "forward_back", "n_segments": 0,
              "circuit_index": 0, "replay_path": ""},
  "state": {"kind": "product1"},
  "sweep": {"grid_lo": 1.0, "grid_hi": 1000.0, "grid_points": 120, "window_lo": 10.0, "window_hi": 100.0},
  "mc": {"n_samples": 1500, "seed": 20240601},
  "trotter": {"N": 16, "mode": "factored"},
  "ml": {"epochs": 500, "lr": 0.01, "split": 0.8, "seed": 7, "log_jstar": true},
  "dataset": {"L_values": [4, 6, 8], "lambdaK_lo": 3.0, "lambdaK_hi": 20.0, "lambdaK_points": 8,
              "sigma_ratio_lo": 0.01, "sigma_ratio_hi": 0.1, "sigma_ratio_points": 6, "n_samples": 1500},
  "analytic": {"a": 0.9090909090909091, "sigma": 0.1, "alpha": 1.5707963267948966}
})");
}

namespace detail {

inline bool same_kind(const Json& a, const Json& b)
{
    if (a.is_number() && b.is_number()) return !a.is_number_integer() || b.is_number_integer();
    return a.type() == b.type();
}

inline std::string kind_name(const Json& j)
{
    if (j.is_number_integer()) return "integer";
    if (j.is_number()) return "number";
    return j.type_name();
}

inline void merge_strict(Json& base, const Json& over, const std::string& path)
{
    if (!over.is_object()) throw ConfigError((path.empty() ? std::string("config") : path) + ": expected an object");
    for (auto it = over.begin(); it != over.end(); ++it) {
        const std::string key = path.empty() ? it.key() : path + "." + it.key();
        if (!base.contains(it.key())) throw ConfigError(key + ": unknown key");
        Json& slot = base[it.key()];
        if (slot.is_object()) {
            merge_strict(slot, it.value(), key);
        } else if (!same_kind(slot, it.value())) {
            throw ConfigError(key + ": expected " + kind_name(slot) + ", got " + kind_name(it.value()));
        } else {
            slot = it.value();
        }
    }
}

inline std::size_t as_count(const Json& j, const std::string& key)
{
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ConfigError(key + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

} // namespace detail

struct RunConfig {
    Json doc = default_config_json();

    std::size_t L = 4;
    DeviceParams device;
    CircuitSpec circuit;
    std::string replay_path;
    InitialStateKind state = InitialStateKind::Product1;
    GridSpec grid;
    double window_lo = kDefaultWindowLo;
    double window_hi = kDefaultWindowHi;
    std::size_t n_samples = kDefaultSamples;
    std::uint64_t seed = 0;
    EvolutionMode mode;
    ml::TrainConfig ml;
    DatasetSpec dataset;
    ToyParams analytic;

    [[nodiscard]] std::string canonical() const { return doc.dump(); }
    [[nodiscard]] std::string hash() const { return hex64(fnv1a(canonical())); }
    [[nodiscard]] Provenance provenance(std::uint64_t s) const { return {hash(), s}; }

    [[nodiscard]] SweepScenario scenario() const
    {
        SweepScenario scn;
        scn.n_qubits = L;
        scn.state = state;
        scn.circuit = circuit;
        scn.params = device;
        scn.grid = grid.values();
        scn.n_samples = n_samples;
        scn.master_seed = seed;
        scn.mode = mode;
        return scn;
    }

    /// Apply a --seed override to every seeded stage.
    void override_seed(std::uint64_t s)
    {
        seed = s;
        dataset.master_seed = s;
        ml.seed = s;
        doc["mc"]["seed"] = s;
        doc["ml"]["seed"] = s;
    }
};

inline RunConfig config_from_json(const Json& user)
{
    RunConfig cfg;
    detail::merge_strict(cfg.doc, user, "");
    const Json& d = cfg.doc;
    auto num = [&](const char* sec, const char* key) { return d[sec][key].get<double>(); };
    auto count = [&](const char* sec, const char* key) {
        return detail::as_count(d[sec][key], std::string(sec) + "." + key);
    };
    auto str = [&](const char* sec, const char* key) { return d[sec][key].get<std::string>(); };
    auto field = [](const std::string& key, auto&& fn) {
        try {
            return fn();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(key + ": " + e.what());
        }
    };

    cfg.L = count("device", "L");
    if (cfg.L < 3 || cfg.L > 10) throw ConfigError("device.L: must lie in [3, 10]");
    cfg.device.lambdaK_mean = num("device", "lambdaK_mean");
    cfg.device.lambdaJ_mean = num("device", "lambdaJ_mean");
    cfg.device.sigmaK = num("device", "sigmaK");
    cfg.device.sigmaJ = num("device", "sigmaJ");
    cfg.device.delta_omega = num("device", "delta_omega");
    field("device", [&] { cfg.device.validate(); return 0; });

    cfg.circuit.kind = field("circuit.kind", [&] { return parse_circuit_kind(str("circuit", "kind")); });
    cfg.circuit.target_D = num("circuit", "target_D");
    if (!(cfg.circuit.target_D >= 0.0 && cfg.circuit.target_D <= 1.0)) {
        throw ConfigError("circuit.target_D: must lie in [0, 1]");
    }
    cfg.circuit.itinerary = field("circuit.itinerary", [&] { return parse_itinerary(str("circuit", "itinerary")); });
    cfg.circuit.n_segments = count("circuit", "n_segments");
    cfg.circuit.circuit_index = count("circuit", "circuit_index");
    cfg.replay_path = str("circuit", "replay_path");
    if (cfg.circuit.kind == CircuitKind::Replay && cfg.replay_path.empty()) {
        throw ConfigError("circuit.replay_path: required when circuit.kind is replay");
    }

    cfg.state = field("state.kind", [&] { return parse_state_kind(str("state", "kind")); });

    cfg.grid = {num("sweep", "grid_lo"), num("sweep", "grid_hi"), count("sweep", "grid_points")};
    field("sweep", [&] { return cfg.grid.values().size(); });
    cfg.window_lo = num("sweep", "window_lo");
    cfg.window_hi = num("sweep", "window_hi");
    if (!(cfg.window_lo <= cfg.window_hi)) throw ConfigError("sweep.window_lo: must not exceed window_hi");

    cfg.n_samples = count("mc", "n_samples");
    if (cfg.n_samples < 1) throw ConfigError("mc.n_samples: must be >= 1");
    if (!d["mc"]["seed"].is_number_unsigned()) throw ConfigError("mc.seed: expected a non-negative integer");
    cfg.seed = d["mc"]["seed"].get<std::uint64_t>();

    cfg.mode.substeps = count("trotter", "N");
    if (cfg.mode.substeps < 1) throw ConfigError("trotter.N: must be >= 1");
    cfg.mode.kind = field("trotter.mode", [&] { return parse_evolution_kind(str("trotter", "mode")); });

    cfg.ml.epochs = count("ml", "epochs");
    cfg.ml.adam.lr = num("ml", "lr");
    cfg.ml.split = num("ml", "split");
    cfg.ml.seed = detail::as_count(d["ml"]["seed"], "ml.seed");
    cfg.ml.log_jstar = d["ml"]["log_jstar"].get<bool>();
    field("ml", [&] { cfg.ml.validate(); return 0; });

    DatasetSpec& ds = cfg.dataset;
    ds.L_values.clear();
    for (const auto& v : d["dataset"]["L_values"]) {
        const std::size_t l = detail::as_count(v, "dataset.L_values");
        if (l < 3 || l > 10) throw ConfigError("dataset.L_values: entries must lie in [3, 10]");
        ds.L_values.push_back(l);
    }
    field("dataset.lambdaK_points", [&] {
        ds.lambdaK_values = linspace(num("dataset", "lambdaK_lo"), num("dataset", "lambdaK_hi"),
                                     count("dataset", "lambdaK_points"));
        return 0;
    });
    field("dataset.sigma_ratio_points", [&] {
        ds.sigma_ratios = linspace(num("dataset", "sigma_ratio_lo"), num("dataset", "sigma_ratio_hi"),
                                   count("dataset", "sigma_ratio_points"));
        return 0;
    });
    ds.base = cfg.device;
    ds.grid = cfg.grid;
    ds.window_lo = cfg.window_lo;
    ds.window_hi = cfg.window_hi;
    ds.n_samples = count("dataset", "n_samples");
    ds.master_seed = cfg.seed;
    ds.state = cfg.state;
    ds.mode = cfg.mode;
    field("dataset", [&] { ds.validate(); return 0; });

    cfg.analytic = {num("analytic", "a"), num("analytic", "sigma"), num("analytic", "alpha")};
    field("analytic", [&] { cfg.analytic.validate(); return 0; });
    return cfg;
}

inline RunConfig parse_config(const std::string& text)
{
    Json user;
    try {
        user = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(e.what()); // carries line and column
    }
    return config_from_json(user);
}

inline RunConfig load_config(const std::string& path)
{
    try {
        return parse_config(read_text_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

} // namespace sweetspot::io

#pragma once

// JSON persistence for trained regressors and gate sequences.

#include "sweetspot/io/config.hpp"

#include <string>
#include <vector>

namespace sweetspot::io {

namespace detail {

inline std::vector<double> to_vector(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

inline RealVector from_vector(const Json& j, const std::string& key, Eigen::Index expected)
{
    if (!j.contains(key) || !j[key].is_array()) throw FormatError("checkpoint: missing array '" + key + "'");
    const auto v = j[key].get<std::vector<double>>();
    if (expected >= 0 && static_cast<Eigen::Index>(v.size()) != expected) {
        throw FormatError("checkpoint: '" + key + "' has " + std::to_string(v.size()) + " entries, expected " +
                          std::to_string(expected));
    }
    return Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

} // namespace detail

inline Json checkpoint_json(const ml::Regressor& reg, const Json& config_echo = Json::object())
{
    Json j;
    j["format"] = "sweetspot-mlp";
    j["version"] = kVersion;
    j["layer_sizes"] = reg.model.sizes;
    j["activation"] = "relu";
    j["parameters"] = detail::to_vector(reg.model.parameters());
    j["input_mean"] = detail::to_vector(reg.inputs.mean);
    j["input_scale"] = detail::to_vector(reg.inputs.scale);
    j["target_mean"] = detail::to_vector(reg.targets.mean);
    j["target_scale"] = detail::to_vector(reg.targets.scale);
    j["log_jstar"] = reg.log_jstar;
    j["seed"] = reg.seed;
    j["n_train"] = reg.n_train;
    j["n_val"] = reg.n_val;
    j["features"] = {"L", "lambdaK_over_lambda0", "sigmaK_over_lambdaK"};
    j["targets"] = {"jstar_over_lambda0", "infidelity_star"};
    j["config"] = config_echo;
    return j;
}

inline ml::Regressor regressor_from_json(const Json& j)
{
    try {
        if (j.value("format", "") != "sweetspot-mlp") throw FormatError("checkpoint: unrecognized format");
        ml::Regressor reg;
        const auto sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
        reg.model = ml::init_model(0, sizes);
        reg.model.set_parameters(
            detail::from_vector(j, "parameters", static_cast<Eigen::Index>(reg.model.parameter_count())));
        const auto n_in = static_cast<Eigen::Index>(sizes.front());
        const auto n_out = static_cast<Eigen::Index>(sizes.back());
        reg.inputs = {detail::from_vector(j, "input_mean", n_in), detail::from_vector(j, "input_scale", n_in)};
        reg.targets = {detail::from_vector(j, "target_mean", n_out), detail::from_vector(j, "target_scale", n_out)};
        reg.log_jstar = j.at("log_jstar").get<bool>();
        reg.seed = j.at("seed").get<std::uint64_t>();
        reg.n_train = j.value("n_train", std::size_t{0});
        reg.n_val = j.value("n_val", std::size_t{0});
        reg.trained = true;
        if (!reg.model.finite()) throw FormatError("checkpoint: non-finite parameters");
        return reg;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("checkpoint: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("checkpoint: ") + e.what());
    }
}

/// Sequence document: {"coupling", "dim", "unitaries": [{"re": [...], "im": [...]}]},
/// each matrix flattened row-major.
inline Json sequence_json(const GateSequence& seq)
{
    Json j;
    j["coupling"] = seq.coupling;
    j["dim"] = seq.dim();
    j["unitaries"] = Json::array();
    for (const auto& u : seq.unitaries) {
        std::vector<double> re, im;
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
            for (Eigen::Index c = 0; c < u.cols(); ++c) {
                re.push_back(u(r, c).real());
                im.push_back(u(r, c).imag());
            }
        }
        j["unitaries"].push_back({{"re", re}, {"im", im}});
    }
    return j;
}

inline GateSequence sequence_from_json(const Json& j)
{
    try {
        GateSequence seq;
        seq.coupling = j.at("coupling").get<double>();
        const auto dim = j.at("dim").get<Eigen::Index>();
        if (dim < 2) throw FormatError("sequence: dim must be >= 2");
        for (const auto& u : j.at("unitaries")) {
            const auto re = u.at("re").get<std::vector<double>>();
            const auto im = u.at("im").get<std::vector<double>>();
            if (re.size() != static_cast<std::size_t>(dim * dim) || im.size() != re.size()) {
                throw FormatError("sequence: unitary " + std::to_string(seq.size()) + " has the wrong size");
            }
            ComplexMatrix m(dim, dim);
            for (Eigen::Index r = 0; r < dim; ++r) {
                for (Eigen::Index c = 0; c < dim; ++c) {
                    const auto k = static_cast<std::size_t>(r * dim + c);
                    m(r, c) = Complex(re[k], im[k]);
                }
            }
            seq.unitaries.push_back(std::move(m));
        }
        seq.validate();
        return seq;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("sequence: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("sequence: ") + e.what());
    }
}

} // namespace sweetspot::io

#pragma once

#include "sweetspot/ml/mlp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sweetspot::ml {

struct LabeledRow {
    std::array<double, 3> inputs{};  // L, lambda_K / lambda0, sigma_K / lambda_K
    std::array<double, 2> targets{}; // J* / lambda0, 1 - F*
};

struct TrainConfig {
    std::size_t epochs = 500;
    AdamConfig adam{.lr = 1e-2};
    double split = 0.8; // training fraction
    std::uint64_t seed = 0;
    bool log_jstar = true; // regress log(J*) internally
    std::vector<std::size_t> layer_sizes = kDefaultLayerSizes;

    void validate() const
    {
        if (!(split > 0.0 && split < 1.0)) throw std::invalid_argument("TrainConfig: split must be in (0, 1)");
        if (epochs < 1) throw std::invalid_argument("TrainConfig: epochs must be >= 1");
        if (!(adam.lr > 0.0)) throw std::invalid_argument("TrainConfig: lr must be > 0");
        if (layer_sizes.size() < 2 || layer_sizes.front() != 3 || layer_sizes.back() != 2) {
            throw std::invalid_argument("TrainConfig: layers must map 3 inputs to 2 outputs");
        }
    }
};

struct EpochMetrics {
    std::size_t epoch = 0;
    double train_mse = 0.0; // in target units
    double val_mse = 0.0;
    double r2_jstar = 0.0; // validation
    double r2_infid = 0.0;
};

/// MLP plus the preprocessing fitted on its training split.
struct Regressor {
    MLPModel model;
    Standardizer inputs;
    Standardizer targets;
    bool log_jstar = true;
    bool trained = false;
    std::uint64_t seed = 0;
    std::size_t n_train = 0;
    std::size_t n_val = 0;

    /// Network target space from physical targets.
    [[nodiscard]] Matrix encode_targets(const Matrix& y) const
    {
        Matrix t = y;
        if (log_jstar) t.col(0) = t.col(0).array().log().matrix();
        return targets.apply(t);
    }

    [[nodiscard]] Matrix decode_targets(const Matrix& z) const
    {
        Matrix y = targets.invert(z);
        if (log_jstar) y.col(0) = y.col(0).array().exp().matrix();
        return y;
    }

    /// Physical predictions for raw (unstandardized) input rows.
    [[nodiscard]] Matrix predict(const Matrix& x) const
    {
        if (!trained) throw std::logic_error("predict: model has not been trained");
        if (x.cols() != static_cast<Eigen::Index>(model.n_inputs())) {
            throw std::invalid_argument("predict: expected " + std::to_string(model.n_inputs()) + " inputs");
        }
        return decode_targets(model.forward(inputs.apply(x)));
    }
};

struct TrainResult {
    Regressor regressor;
    std::vector<EpochMetrics> history;
    std::vector<std::size_t> train_index;
    std::vector<std::size_t> val_index;
};

inline Matrix input_matrix(const std::vector<LabeledRow>& rows, const std::vector<std::size_t>& idx)
{
    Matrix x(static_cast<Eigen::Index>(idx.size()), 3);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (int c = 0; c < 3; ++c) x(static_cast<Eigen::Index>(i), c) = rows[idx[i]].inputs[c];
    }
    return x;
}

inline Matrix target_matrix(const std::vector<LabeledRow>& rows, const std::vector<std::size_t>& idx)
{
    Matrix y(static_cast<Eigen::Index>(idx.size()), 2);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (int c = 0; c < 2; ++c) y(static_cast<Eigen::Index>(i), c) = rows[idx[i]].targets[c];
    }
    return y;
}

inline constexpr std::uint64_t kSplitStreamTag = 0x53504c4954ULL;

/// Seeded Fisher-Yates shuffle, first round(split*n) indices train.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n, double split,
                                                                                   std::uint64_t seed)
{
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto rng = SeededRng::for_stream(seed, {kSplitStreamTag});
    for (std::size_t i = n; i-- > 1;) {
        const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
        std::swap(idx[i], idx[std::min(j, i)]);
    }
    const auto n_train = static_cast<std::size_t>(std::llround(split * static_cast<double>(n)));
    return {{idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train)},
            {idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end()}};
}

inline void check_rows(const std::vector<LabeledRow>& rows)
{
    if (rows.size() < 10) throw std::invalid_argument("train: need at least 10 rows, got " + std::to_string(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const bool ok = std::isfinite(r.targets[0]) && std::isfinite(r.targets[1]) && r.targets[0] > 0.0 &&
                        std::all_of(r.inputs.begin(), r.inputs.end(), [](double v) { return std::isfinite(v); });
        if (!ok) throw std::invalid_argument("train: row " + std::to_string(i) + " has invalid inputs or targets");
    }
}

/// Full-batch Adam on MSE in standardized target space. Standardization
/// statistics come from the training rows only.
inline TrainResult train(const std::vector<LabeledRow>& rows, const TrainConfig& cfg)
{
    cfg.validate();
    check_rows(rows);
    TrainResult res;
    std::tie(res.train_index, res.val_index) = split_indices(rows.size(), cfg.split, cfg.seed);
    if (res.train_index.size() < 2 || res.val_index.size() < 2) {
        throw std::invalid_argument("train: split leaves fewer than two rows on one side");
    }
    const Matrix x_train = input_matrix(rows, res.train_index);
    const Matrix y_train = target_matrix(rows, res.train_index);
    const Matrix x_val = input_matrix(rows, res.val_index);
    const Matrix y_val = target_matrix(rows, res.val_index);

    Regressor& reg = res.regressor;
    reg.seed = cfg.seed;
    reg.log_jstar = cfg.log_jstar;
    reg.n_train = res.train_index.size();
    reg.n_val = res.val_index.size();
    reg.inputs = Standardizer::fit(x_train);
    {
        Matrix t = y_train;
        if (reg.log_jstar) t.col(0) = t.col(0).array().log().matrix();
        reg.targets = Standardizer::fit(t);
    }
    reg.model = init_model(cfg.seed, cfg.layer_sizes);
    reg.trained = true;

    const Matrix zx_train = reg.inputs.apply(x_train);
    const Matrix zy_train = reg.encode_targets(y_train);
    RealVector params = reg.model.parameters();
    RealVector grad;
    Adam adam(params.size(), cfg.adam);
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const double loss = reg.model.loss_and_gradient(zx_train, zy_train, grad);
        if (!std::isfinite(loss) || !grad.allFinite()) {
            std::ostringstream msg;
            msg << "train: non-finite loss at epoch " << epoch << " (loss " << loss << ", lr " << cfg.adam.lr << ")";
            throw std::runtime_error(msg.str());
        }
        adam.step(params, grad);
        reg.model.set_parameters(params);
        if (!params.allFinite()) {
            throw std::runtime_error("train: non-finite parameters after epoch " + std::to_string(epoch));
        }
        const Matrix p_val = reg.predict(x_val);
        const RealVector r = r2(y_val, p_val);
        res.history.push_back({epoch, mse(y_train, reg.predict(x_train)), mse(y_val, p_val), r(0), r(1)});
    }
    return res;
}

} // namespace sweetspot::ml

#pragma once

// Fully connected regressor: linear -> ReLU -> ... -> linear.

#include "sweetspot/core/rng.hpp"
#include "sweetspot/ml/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sweetspot::ml {

struct DenseLayer {
    Matrix weights; // out x in
    RealVector bias;
};

/// Per-column affine standardization z = (x - mean) / scale.
struct Standardizer {
    RealVector mean;
    RealVector scale;

    static Standardizer identity(Eigen::Index n)
    {
        return {RealVector::Zero(n), RealVector::Ones(n)};
    }

    static Standardizer fit(const Matrix& x)
    {
        if (x.rows() < 2) throw std::invalid_argument("Standardizer::fit: need at least two rows");
        Standardizer s;
        s.mean = x.colwise().mean().transpose();
        s.scale.resize(x.cols());
        for (Eigen::Index c = 0; c < x.cols(); ++c) {
            const double var = (x.col(c).array() - s.mean(c)).square().sum() / static_cast<double>(x.rows() - 1);
            s.scale(c) = var > 0.0 ? std::sqrt(var) : 1.0;
        }
        return s;
    }

    [[nodiscard]] Matrix apply(const Matrix& x) const
    {
        return (x.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array();
    }

    [[nodiscard]] Matrix invert(const Matrix& z) const
    {
        return (z.array().rowwise() * scale.transpose().array()).matrix().rowwise() + mean.transpose();
    }
};

inline const std::vector<std::size_t> kDefaultLayerSizes{3, 10, 10, 2};

class MLPModel {
public:
    std::vector<std::size_t> sizes = kDefaultLayerSizes;
    std::vector<DenseLayer> layers;

    [[nodiscard]] std::size_t n_inputs() const { return sizes.front(); }
    [[nodiscard]] std::size_t n_outputs() const { return sizes.back(); }

    [[nodiscard]] std::size_t parameter_count() const
    {
        std::size_t n = 0;
        for (std::size_t l = 0; l + 1 < sizes.size(); ++l) n += sizes[l + 1] * (sizes[l] + 1);
        return n;
    }

    /// Weights row-major per layer, then that layer's bias.
    [[nodiscard]] RealVector parameters() const
    {
        RealVector p(static_cast<Eigen::Index>(parameter_count()));
        Eigen::Index k = 0;
        for (const auto& layer : layers) {
            for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
                for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) p(k++) = layer.weights(r, c);
            }
            for (Eigen::Index r = 0; r < layer.bias.size(); ++r) p(k++) = layer.bias(r);
        }
        return p;
    }

    void set_parameters(const RealVector& p)
    {
        if (p.size() != static_cast<Eigen::Index>(parameter_count())) {
            throw std::invalid_argument("MLPModel::set_parameters: expected " +
                                        std::to_string(parameter_count()) + " values");
        }
        Eigen::Index k = 0;
        for (auto& layer : layers) {
            for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
                for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) layer.weights(r, c) = p(k++);
            }
            for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = p(k++);
        }
    }

    [[nodiscard]] bool finite() const { return parameters().allFinite(); }

    /// Forward pass on already-standardized inputs (rows are samples).
    [[nodiscard]] Matrix forward(const Matrix& x) const
    {
        Matrix a = x;
        for (std::size_t l = 0; l < layers.size(); ++l) {
            Matrix z = (a * layers[l].weights.transpose()).rowwise() + layers[l].bias.transpose();
            a = l + 1 < layers.size() ? Matrix(z.cwiseMax(0.0)) : z;
        }
        return a;
    }

    /// Pre-activations of every hidden layer, for diagnostics.
    [[nodiscard]] std::vector<Matrix> hidden_preactivations(const Matrix& x) const
    {
        std::vector<Matrix> out;
        Matrix a = x;
        for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
            Matrix z = (a * layers[l].weights.transpose()).rowwise() + layers[l].bias.transpose();
            a = z.cwiseMax(0.0);
            out.push_back(std::move(z));
        }
        return out;
    }

    /// Loss mse(forward(x), y) and its gradient in parameters() layout.
    [[nodiscard]] double loss_and_gradient(const Matrix& x, const Matrix& y, RealVector& grad) const
    {
        const std::size_t n_layers = layers.size();
        std::vector<Matrix> acts{x};
        std::vector<Matrix> pre;
        for (std::size_t l = 0; l < n_layers; ++l) {
            Matrix z = (acts.back() * layers[l].weights.transpose()).rowwise() + layers[l].bias.transpose();
            pre.push_back(z);
            acts.push_back(l + 1 < n_layers ? Matrix(z.cwiseMax(0.0)) : z);
        }
        const Matrix& out = acts.back();
        const double loss = mse(y, out);
        Matrix delta = 2.0 * (out - y) / static_cast<double>(x.rows());

        std::vector<Matrix> d_w(n_layers);
        std::vector<RealVector> d_b(n_layers);
        for (std::size_t l = n_layers; l-- > 0;) {
            d_w[l] = delta.transpose() * acts[l];
            d_b[l] = delta.colwise().sum().transpose();
            if (l > 0) {
                delta = (delta * layers[l].weights).cwiseProduct(
                    Matrix((pre[l - 1].array() > 0.0).cast<double>()));
            }
        }
        grad.resize(static_cast<Eigen::Index>(parameter_count()));
        Eigen::Index k = 0;
        for (std::size_t l = 0; l < n_layers; ++l) {
            for (Eigen::Index r = 0; r < d_w[l].rows(); ++r) {
                for (Eigen::Index c = 0; c < d_w[l].cols(); ++c) grad(k++) = d_w[l](r, c);
            }
            for (Eigen::Index r = 0; r < d_b[l].size(); ++r) grad(k++) = d_b[l](r);
        }
        return loss;
    }
};

inline constexpr std::uint64_t kInitStreamTag = 0x494e4954ULL;

/// He initialization: N(0, 2/fan_in) weights, zero biases.
inline MLPModel init_model(std::uint64_t seed, const std::vector<std::size_t>& sizes = kDefaultLayerSizes)
{
    if (sizes.size() < 2) throw std::invalid_argument("init_model: need at least input and output sizes");
    for (auto s : sizes) {
        if (s == 0) throw std::invalid_argument("init_model: layer sizes must be positive");
    }
    MLPModel m;
    m.sizes = sizes;
    auto rng = SeededRng::for_stream(seed, {kInitStreamTag});
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const auto in = static_cast<Eigen::Index>(sizes[l]);
        const auto out = static_cast<Eigen::Index>(sizes[l + 1]);
        const double sd = std::sqrt(2.0 / static_cast<double>(in));
        DenseLayer layer{Matrix(out, in), RealVector::Zero(out)};
        for (Eigen::Index r = 0; r < out; ++r) {
            for (Eigen::Index c = 0; c < in; ++c) layer.weights(r, c) = rng.normal(0.0, sd);
        }
        m.layers.push_back(std::move(layer));
    }
    return m;
}

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

class Adam {
public:
    Adam(std::size_t n_params, AdamConfig cfg)
        : cfg_(cfg), m_(RealVector::Zero(static_cast<Eigen::Index>(n_params))), v_(m_)
    {
    }

    void step(RealVector& params, const RealVector& grad)
    {
        if (grad.size() != params.size() || grad.size() != m_.size()) {
            throw std::invalid_argument("Adam::step: size mismatch");
        }
        ++t_;
        m_ = cfg_.beta1 * m_ + (1.0 - cfg_.beta1) * grad;
        v_ = cfg_.beta2 * v_ + (1.0 - cfg_.beta2) * grad.cwiseAbs2();
        const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
        const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
        params.array() -= cfg_.lr * (m_.array() / c1) / ((v_.array() / c2).sqrt() + cfg_.eps);
    }

    [[nodiscard]] std::size_t steps() const { return t_; }

private:
    AdamConfig cfg_;
    RealVector m_;
    RealVector v_;
    std::size_t t_ = 0;
};

} // namespace sweetspot::ml

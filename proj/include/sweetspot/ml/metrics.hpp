#pragma once

#include "sweetspot/core/linalg.hpp"

#include <stdexcept>

namespace sweetspot::ml {

/// Rows are samples, columns are output components.
using Matrix = RealMatrix;

inline void check_same_shape(const Matrix& y, const Matrix& yhat, const char* where)
{
    if (y.rows() != yhat.rows() || y.cols() != yhat.cols()) {
        throw std::invalid_argument(std::string(where) + ": shape mismatch");
    }
    if (y.rows() == 0) throw std::invalid_argument(std::string(where) + ": empty input");
}

/// (1/n) sum_i ||y_i - yhat_i||^2, output components summed per row.
inline double mse(const Matrix& y, const Matrix& yhat)
{
    check_same_shape(y, yhat, "mse");
    return (y - yhat).squaredNorm() / static_cast<double>(y.rows());
}

/// Coefficient of determination per output column.
inline RealVector r2(const Matrix& y, const Matrix& yhat)
{
    check_same_shape(y, yhat, "r2");
    RealVector out(y.cols());
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
        const double mean = y.col(c).mean();
        const double total = (y.col(c).array() - mean).square().sum();
        if (!(total > 0.0)) throw std::invalid_argument("r2: target column has zero variance");
        out(c) = 1.0 - (y.col(c) - yhat.col(c)).squaredNorm() / total;
    }
    return out;
}

} // namespace sweetspot::ml

#pragma once

#include "sweetspot/core/haar.hpp"
#include "sweetspot/core/parallel.hpp"

#include <sstream>
#include <vector>

namespace sweetspot {

/// Haar-averaged return probability of R: (d + |tr R|^2) / (d (d + 1)).
inline double distance_to_identity(const ComplexMatrix& r)
{
    require_unitary(r, "distance_to_identity");
    const auto d = static_cast<double>(r.rows());
    return (d + std::norm(r.trace())) / (d * (d + 1.0));
}

/// Monte-Carlo estimate of mean |<psi|R|psi>|^2 over Haar-random states.
inline MeanEstimate haar_mean_overlap(const ComplexMatrix& r, std::size_t n_states, SeededRng& rng)
{
    std::vector<double> samples(n_states);
    for (double& s : samples) {
        const StateVector psi = haar_state(static_cast<std::size_t>(r.rows()), rng);
        s = std::norm(psi.dot(r * psi));
    }
    return mean_and_stderr(samples);
}

namespace detail {

inline double distance_along_geodesic(const RealVector& phases, double s)
{
    Complex tr(0.0, 0.0);
    for (Eigen::Index j = 0; j < phases.size(); ++j) tr += std::polar(1.0, s * phases[j]);
    const auto d = static_cast<double>(phases.size());
    return (d + std::norm(tr)) / (d * (d + 1.0));
}

} // namespace detail

/// Unitary at a prescribed distance to identity.
///
/// Draws a Haar candidate U and walks the geodesic R(s) = exp(s log U) from
/// s = 0 (D = 1). A coarse scan locates the first bracket where D(s) falls to
/// the target, and bisection refines it. A candidate whose geodesic never
/// reaches the target is replaced by a fresh draw.
inline ComplexMatrix unitary_with_distance(std::size_t dim, double target_D, SeededRng& rng)
{
    const double d = static_cast<double>(dim);
    const double lowest = 1.0 / (d + 1.0);
    if (!(target_D >= lowest + 1e-9 && target_D <= 1.0)) {
        std::ostringstream msg;
        msg << "unitary_with_distance: target D=" << target_D << " outside attainable range ["
            << lowest + 1e-9 << ", 1] for d=" << dim;
        throw std::invalid_argument(msg.str());
    }
    if (target_D == 1.0) return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));

    constexpr int kMaxCandidates = 256;
    constexpr int kScanSteps = 4096;
    constexpr int kMaxBisection = 200;
    constexpr double kTol = 1e-6;
    for (int attempt = 0; attempt < kMaxCandidates; ++attempt) {
        const UnitaryLog log(haar_unitary(dim, rng));
        double lo = 0.0;
        double hi = -1.0;
        for (int k = 1; k <= kScanSteps; ++k) {
            const double s = static_cast<double>(k) / kScanSteps;
            if (detail::distance_along_geodesic(log.phases, s) <= target_D) {
                hi = s;
                break;
            }
            lo = s;
        }
        if (hi < 0.0) continue;
        double mid = hi;
        for (int it = 0; it < kMaxBisection; ++it) {
            mid = 0.5 * (lo + hi);
            const double dm = detail::distance_along_geodesic(log.phases, mid);
            if (std::abs(dm - target_D) <= 0.01 * kTol) break;
            (dm > target_D ? lo : hi) = mid;
        }
        const ComplexMatrix r = log.power(mid);
        const double achieved = distance_to_identity(r);
        if (std::abs(achieved - target_D) > kTol) {
            std::ostringstream msg;
            msg << "unitary_with_distance: bisection stalled at D=" << achieved << " (target "
                << target_D << ", s=" << mid << ")";
            throw std::runtime_error(msg.str());
        }
        return r;
    }
    std::ostringstream msg;
    msg << "unitary_with_distance: no geodesic reached D=" << target_D << " after "
        << kMaxCandidates << " candidates";
    throw std::runtime_error(msg.str());
}

} // namespace sweetspot

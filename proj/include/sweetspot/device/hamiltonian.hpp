#pragma once

// Noise and control Hamiltonians in units of the energy scale lambda0 = 1.
//
//   H_noise = sum_i dw_i Z_i + sum_edges lJ_ij Y_i Y_j
//           + sum_chords lK_ij (S+_i S-_j + S-_i S+_j)
//
// Every term is real in the computational basis and flips zero or two bits,
// so H_noise is real symmetric and block diagonal in popcount parity. The
// per-sample path exploits both facts.

#include "sweetspot/core/linalg.hpp"
#include "sweetspot/device/topology.hpp"

#include <bit>
#include <cstdint>
#include <sstream>
#include <vector>

namespace sweetspot {

struct DeviceParams {
    double lambda0 = 1.0;
    double lambdaK_mean = 1.0;
    double lambdaJ_mean = 0.1;
    double sigmaK = 0.01;
    double sigmaJ = 0.001;
    double delta_omega = 1e-4;

    void validate() const
    {
        if (!(sigmaK >= 0.0) || !(sigmaJ >= 0.0)) {
            throw std::invalid_argument("DeviceParams: standard deviations must be >= 0");
        }
        if (!(lambda0 > 0.0)) throw std::invalid_argument("DeviceParams: lambda0 must be > 0");
    }

    /// lambdaK_mean / lambdaJ_mean; preset devices keep this in [3, 20].
    [[nodiscard]] double coupling_ratio() const { return lambdaK_mean / lambdaJ_mean; }
};

/// Convert a physical energy (e.g. MHz) to lambda0 units given lambda0 in the
/// same physical unit. Computation itself only ever sees lambda0 units.
constexpr double to_lambda0_units(double value, double lambda0_physical)
{
    return value / lambda0_physical;
}

/// One quasi-static noise realization.
struct NoiseDraw {
    std::vector<double> delta_omega; // per qubit
    std::vector<double> lambdaJ;     // per cavity edge
    std::vector<double> lambdaK;     // per CPW chord

    static NoiseDraw zeros(const RingTopology& topo)
    {
        return {std::vector<double>(topo.n_qubits, 0.0), std::vector<double>(topo.edges.size(), 0.0),
                std::vector<double>(topo.chords.size(), 0.0)};
    }

    /// The draw with every channel at its mean.
    static NoiseDraw at_means(const RingTopology& topo, const DeviceParams& p)
    {
        return {std::vector<double>(topo.n_qubits, p.delta_omega),
                std::vector<double>(topo.edges.size(), p.lambdaJ_mean),
                std::vector<double>(topo.chords.size(), p.lambdaK_mean)};
    }
};

namespace detail {

inline std::uint64_t site_mask(std::size_t site, std::size_t n_qubits)
{
    return std::uint64_t{1} << (n_qubits - 1 - site);
}

inline void check_draw(const RingTopology& topo, const NoiseDraw& draw)
{
    if (draw.delta_omega.size() != topo.n_qubits || draw.lambdaJ.size() != topo.edges.size() ||
        draw.lambdaK.size() != topo.chords.size()) {
        std::ostringstream msg;
        msg << "noise draw does not match topology: expected (" << topo.n_qubits << ", "
            << topo.edges.size() << ", " << topo.chords.size() << ") got ("
            << draw.delta_omega.size() << ", " << draw.lambdaJ.size() << ", "
            << draw.lambdaK.size() << ")";
        throw std::invalid_argument(msg.str());
    }
}

} // namespace detail

/// Real symmetric noise Hamiltonian assembled directly from basis bit flips.
inline RealMatrix noise_hamiltonian_real(const RingTopology& topo, const NoiseDraw& draw)
{
    detail::check_draw(topo, draw);
    const std::size_t n = topo.n_qubits;
    const auto dim = static_cast<Eigen::Index>(qubit_dimension(n));
    RealMatrix h = RealMatrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const auto basis = static_cast<std::uint64_t>(b);
        double diag = 0.0;
        for (std::size_t q = 0; q < n; ++q) {
            diag += (basis & detail::site_mask(q, n)) ? -draw.delta_omega[q] : draw.delta_omega[q];
        }
        h(b, b) += diag;
        for (std::size_t e = 0; e < topo.edges.size(); ++e) {
            const auto [i, j] = topo.edges[e];
            const std::uint64_t mi = detail::site_mask(i, n);
            const std::uint64_t mj = detail::site_mask(j, n);
            const bool same = ((basis & mi) != 0) == ((basis & mj) != 0);
            // <flip| Y Y |b>: i*i = -1 when both bits agree, i*(-i) = +1 otherwise.
            h(static_cast<Eigen::Index>(basis ^ mi ^ mj), b) += same ? -draw.lambdaJ[e] : draw.lambdaJ[e];
        }
        for (std::size_t c = 0; c < topo.chords.size(); ++c) {
            const auto [i, j] = topo.chords[c];
            const std::uint64_t mi = detail::site_mask(i, n);
            const std::uint64_t mj = detail::site_mask(j, n);
            if (((basis & mi) != 0) != ((basis & mj) != 0)) {
                h(static_cast<Eigen::Index>(basis ^ mi ^ mj), b) += draw.lambdaK[c];
            }
        }
    }
    return h;
}

inline ComplexMatrix build_noise_hamiltonian(const RingTopology& topo, const NoiseDraw& draw)
{
    return noise_hamiltonian_real(topo, draw).cast<Complex>();
}

/// 2J (S+_i S-_j + S-_i S+_j) on a cavity edge.
inline ComplexMatrix build_swap_generator(const RingTopology& topo, std::size_t i, std::size_t j,
                                          double coupling)
{
    if (i == j || !topo.is_edge(i, j)) {
        std::ostringstream msg;
        msg << "build_swap_generator: (" << i << ", " << j << ") is not a cavity edge";
        throw std::invalid_argument(msg.str());
    }
    const std::size_t a = std::min(i, j);
    const std::size_t b = std::max(i, j);
    const std::size_t n = topo.n_qubits;
    const ComplexMatrix hop = embed_two_site(pauli::plus(), pauli::minus(), a, b, n) +
                              embed_two_site(pauli::minus(), pauli::plus(), a, b, n);
    return 2.0 * coupling * hop;
}

/// Eigendecomposition of a parity-conserving real symmetric Hamiltonian,
/// solved separately on the even- and odd-popcount sectors.
class ParityBlockSpectrum {
public:
    explicit ParityBlockSpectrum(const RealMatrix& h)
    {
        const Eigen::Index dim = h.rows();
        for (Eigen::Index b = 0; b < dim; ++b) {
            sectors_[std::popcount(static_cast<std::uint64_t>(b)) & 1].indices.push_back(b);
        }
        for (auto& s : sectors_) {
            const auto m = static_cast<Eigen::Index>(s.indices.size());
            if (m == 0) continue;
            RealMatrix block(m, m);
            for (Eigen::Index r = 0; r < m; ++r) {
                for (Eigen::Index c = 0; c < m; ++c) block(r, c) = h(s.indices[r], s.indices[c]);
            }
            Eigen::SelfAdjointEigenSolver<RealMatrix> solver(block);
            if (solver.info() != Eigen::Success) {
                throw LinalgError("ParityBlockSpectrum: eigensolver did not converge");
            }
            s.eigenvalues = solver.eigenvalues();
            s.eigenvectors = solver.eigenvectors();
        }
    }

    /// Spectral weights |<e_j|phi>|^2 with their eigenvalues; the return
    /// amplitude is then <phi|exp(i H T)|phi> = sum_j w_j exp(i lambda_j T).
    struct Weights {
        std::vector<double> eigenvalues;
        std::vector<double> weights;
    };

    [[nodiscard]] Weights weights(const StateVector& phi) const
    {
        Weights out;
        for (const auto& s : sectors_) {
            const auto m = static_cast<Eigen::Index>(s.indices.size());
            if (m == 0) continue;
            Eigen::VectorXcd local(m);
            for (Eigen::Index r = 0; r < m; ++r) local[r] = phi[s.indices[r]];
            if (local.squaredNorm() == 0.0) continue;
            const Eigen::VectorXcd c = s.eigenvectors.transpose().cast<Complex>() * local;
            for (Eigen::Index j = 0; j < m; ++j) {
                out.eigenvalues.push_back(s.eigenvalues[j]);
                out.weights.push_back(std::norm(c[j]));
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<double> eigenvalues() const
    {
        std::vector<double> out;
        for (const auto& s : sectors_) {
            for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) out.push_back(s.eigenvalues[j]);
        }
        return out;
    }

private:
    struct Sector {
        std::vector<Eigen::Index> indices;
        RealVector eigenvalues;
        RealMatrix eigenvectors;
    };
    Sector sectors_[2];
};

inline Complex return_amplitude(const ParityBlockSpectrum::Weights& w, double t)
{
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < w.weights.size(); ++j) {
        acc += w.weights[j] * std::polar(1.0, w.eigenvalues[j] * t);
    }
    return acc;
}

} // namespace sweetspot

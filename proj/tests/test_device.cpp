#include "sweetspot/device/hamiltonian.hpp"
#include "sweetspot/device/topology.hpp"
#include "sweetspot/noise/sampler.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace sweetspot;

namespace {

ComplexMatrix all_x(std::size_t n)
{
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (std::size_t q = 0; q < n; ++q) out = kron(out, pauli::x());
    return out;
}

ComplexMatrix total_z(std::size_t n)
{
    ComplexMatrix out = ComplexMatrix::Zero(1 << n, 1 << n);
    for (std::size_t q = 0; q < n; ++q) out += embed_one_site(pauli::z(), q, n);
    return out;
}

/// Kronecker-built reference for the noise Hamiltonian.
ComplexMatrix brute_force_noise(const RingTopology& topo, const NoiseDraw& d)
{
    const std::size_t n = topo.n_qubits;
    ComplexMatrix h = ComplexMatrix::Zero(1 << n, 1 << n);
    for (std::size_t q = 0; q < n; ++q) h += d.delta_omega[q] * embed_one_site(pauli::z(), q, n);
    for (std::size_t e = 0; e < topo.edges.size(); ++e) {
        const auto [i, j] = topo.edges[e];
        h += d.lambdaJ[e] * embed_two_site(pauli::y(), pauli::y(), i, j, n);
    }
    for (std::size_t c = 0; c < topo.chords.size(); ++c) {
        const auto [i, j] = topo.chords[c];
        h += d.lambdaK[c] * (embed_two_site(pauli::plus(), pauli::minus(), i, j, n) +
                             embed_two_site(pauli::minus(), pauli::plus(), i, j, n));
    }
    return h;
}

NoiseDraw random_draw(const RingTopology& topo, std::uint64_t seed)
{
    SeededRng rng(seed);
    NoiseDraw d = NoiseDraw::zeros(topo);
    for (double& v : d.delta_omega) v = rng.normal();
    for (double& v : d.lambdaJ) v = rng.normal();
    for (double& v : d.lambdaK) v = rng.normal();
    return d;
}

} // namespace

TEST(Topology, FourRing)
{
    const RingTopology t = build_topology(4);
    const std::vector<QubitPair> edges{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    const std::vector<QubitPair> chords{{0, 2}, {1, 3}};
    EXPECT_EQ(t.edges, edges);
    EXPECT_EQ(t.chords, chords);
    EXPECT_TRUE(t.is_edge(3, 0));
}

TEST(Topology, Counts)
{
    for (std::size_t L = 3; L <= 8; ++L) {
        const RingTopology t = build_topology(L);
        EXPECT_EQ(t.edges.size(), L);
        EXPECT_EQ(t.chords.size(), L * (L - 3) / 2);
        std::set<QubitPair> all(t.edges.begin(), t.edges.end());
        for (const auto& c : t.chords) EXPECT_TRUE(all.insert(c).second) << "chord overlaps an edge";
        EXPECT_EQ(all.size(), L * (L - 1) / 2);
    }
    EXPECT_EQ(build_topology(6).chords.size(), 9u);
    EXPECT_TRUE(build_topology(3).chords.empty());
}

TEST(Topology, RejectsSmallRings) { EXPECT_THROW(build_topology(2), std::invalid_argument); }

TEST(NoiseHamiltonian, ZeroDrawIsZero)
{
    const RingTopology t = build_topology(4);
    EXPECT_EQ(max_abs(build_noise_hamiltonian(t, NoiseDraw::zeros(t))), 0.0);
}

TEST(NoiseHamiltonian, MatchesKroneckerConstruction)
{
    for (std::size_t L : {3u, 4u, 5u, 6u}) {
        const RingTopology t = build_topology(L);
        const NoiseDraw d = random_draw(t, L);
        EXPECT_LT(max_abs(build_noise_hamiltonian(t, d) - brute_force_noise(t, d)), 1e-14) << "L=" << L;
    }
}

TEST(NoiseHamiltonian, SingleChordMatchesEmbed)
{
    const RingTopology t = build_topology(4);
    NoiseDraw d = NoiseDraw::zeros(t);
    d.lambdaK[0] = 1.0; // chord (0, 2)
    ComplexMatrix want = ComplexMatrix::Zero(16, 16);
    // |b0 b1 b2 b3> with bits 0 and 2 different swap those two bits.
    for (int b = 0; b < 16; ++b) {
        const bool b0 = b & 8, b2 = b & 2;
        if (b0 != b2) want(b ^ 10, b) = 1.0;
    }
    EXPECT_EQ(max_abs(build_noise_hamiltonian(t, d) - want), 0.0);
}

TEST(NoiseHamiltonian, TwoSiteToyIdentification)
{
    // Two-site register with one cavity term and one chord term of weight a:
    // lambdaJ YY + a (S+S- + S-S+) = YY + (a/2)(XX + YY). Checked against the
    // explicit Pauli form so the coefficient map is pinned.
    RingTopology t;
    t.n_qubits = 2;
    t.edges = {{0, 1}};
    t.chords = {{0, 1}};
    const double a = 10.0 / 11.0;
    NoiseDraw d{{0.0, 0.0}, {1.0}, {a}};
    const ComplexMatrix xx = kron(pauli::x(), pauli::x());
    const ComplexMatrix yy = kron(pauli::y(), pauli::y());
    EXPECT_LT(max_abs(build_noise_hamiltonian(t, d) - (yy + 0.5 * a * (xx + yy))), 1e-15);
}

TEST(NoiseHamiltonian, HermitianForRandomDraws)
{
    const RingTopology t = build_topology(6);
    for (std::uint64_t s = 0; s < 10; ++s) {
        EXPECT_EQ(hermitian_defect(build_noise_hamiltonian(t, random_draw(t, s))), 0.0);
    }
}

TEST(NoiseHamiltonian, CommutesWithGlobalFlipWithoutFrequencyShift)
{
    const RingTopology t = build_topology(5);
    NoiseDraw d = random_draw(t, 3);
    std::fill(d.delta_omega.begin(), d.delta_omega.end(), 0.0);
    const ComplexMatrix h = build_noise_hamiltonian(t, d);
    const ComplexMatrix x = all_x(5);
    EXPECT_LE(frobenius_norm(h * x - x * h), 1e-12);
    d.delta_omega[0] = 0.3;
    const ComplexMatrix h2 = build_noise_hamiltonian(t, d);
    EXPECT_GT(frobenius_norm(h2 * x - x * h2), 0.1);
}

TEST(NoiseHamiltonian, ChordsConserveExcitationsEdgesDoNot)
{
    const RingTopology t = build_topology(5);
    const ComplexMatrix sz = total_z(5);
    NoiseDraw chords = NoiseDraw::zeros(t);
    for (double& v : chords.lambdaK) v = 0.7;
    const ComplexMatrix hc = build_noise_hamiltonian(t, chords);
    EXPECT_LE(frobenius_norm(hc * sz - sz * hc), 1e-12);
    NoiseDraw edges = NoiseDraw::zeros(t);
    for (double& v : edges.lambdaJ) v = 0.7;
    const ComplexMatrix he = build_noise_hamiltonian(t, edges);
    EXPECT_GT(frobenius_norm(he * sz - sz * he), 1.0);
    // YY couples |00> and |11> on the edge.
    EXPECT_NE(std::abs(he(0, 0b11000)), 0.0);
}

TEST(NoiseHamiltonian, RejectsSizeMismatch)
{
    const RingTopology t = build_topology(4);
    NoiseDraw d = NoiseDraw::zeros(t);
    d.lambdaK.pop_back();
    EXPECT_THROW((void)build_noise_hamiltonian(t, d), std::invalid_argument);
}

TEST(SwapGenerator, ExponentialActsAsSwap)
{
    const RingTopology t = build_topology(4);
    const double J = 2.5;
    const double tau = std::numbers::pi / (4.0 * J);
    const ComplexMatrix u = expm_hermitian(build_swap_generator(t, 1, 2, J), tau);
    // On the {|01>,|10>} block of sites (1,2) it swaps up to the phase -i;
    // where the two sites agree it is the identity.
    for (int b = 0; b < 16; ++b) {
        const bool b1 = b & 4, b2 = b & 2;
        if (b1 == b2) {
            EXPECT_NEAR(std::abs(u(b, b) - 1.0), 0.0, 1e-12);
        } else {
            EXPECT_NEAR(std::abs(u(b ^ 6, b) - Complex(0, -1)), 0.0, 1e-12);
        }
    }
}

TEST(SwapGenerator, NormAndZeroCoupling)
{
    RingTopology t;
    t.n_qubits = 2;
    t.edges = {{0, 1}};
    EXPECT_NEAR(frobenius_norm(build_swap_generator(t, 0, 1, 0.4)), 2.0 * std::sqrt(2.0) * 0.4, 1e-14);
    EXPECT_EQ(max_abs(build_swap_generator(build_topology(4), 0, 1, 0.0)), 0.0);
}

TEST(SwapGenerator, RejectsChords)
{
    const RingTopology t = build_topology(4);
    EXPECT_THROW((void)build_swap_generator(t, 0, 2, 1.0), std::invalid_argument);
    EXPECT_NO_THROW((void)build_swap_generator(t, 3, 0, 1.0));
}

TEST(ParityBlockSpectrum, MatchesDenseEigensolver)
{
    const RingTopology t = build_topology(5);
    const NoiseDraw d = random_draw(t, 17);
    const RealMatrix h = noise_hamiltonian_real(t, d);
    auto fast = ParityBlockSpectrum(h).eigenvalues();
    std::sort(fast.begin(), fast.end());
    const HermitianSpectrum dense(h.cast<Complex>());
    for (std::size_t j = 0; j < fast.size(); ++j) EXPECT_NEAR(fast[j], dense.eigenvalues[j], 1e-12);

    SeededRng rng(1);
    StateVector phi(32);
    for (Eigen::Index i = 0; i < 32; ++i) phi(i) = Complex(rng.normal(), rng.normal());
    phi.normalize();
    const auto w = ParityBlockSpectrum(h).weights(phi);
    const double T = 1.9;
    const Complex want = phi.dot(dense.propagator(-T) * phi);
    EXPECT_NEAR(std::abs(return_amplitude(w, T) - want), 0.0, 1e-12);
}

TEST(DeviceParams, Defaults)
{
    const DeviceParams p;
    EXPECT_EQ(p.lambda0, 1.0);
    EXPECT_EQ(p.lambdaK_mean, 1.0);
    EXPECT_DOUBLE_EQ(p.lambdaJ_mean, 0.1);
    EXPECT_DOUBLE_EQ(p.sigmaK, 0.01 * p.lambdaK_mean);
    EXPECT_DOUBLE_EQ(p.sigmaJ, 0.01 * p.lambdaJ_mean);
    EXPECT_DOUBLE_EQ(p.delta_omega, 1e-4);
    EXPECT_DOUBLE_EQ(p.coupling_ratio(), 10.0);
    DeviceParams bad;
    bad.sigmaK = -1;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Sampler, ZeroWidthGivesMeans)
{
    NoiseSpec spec;
    spec.params.sigmaK = 0;
    spec.params.sigmaJ = 0;
    const RingTopology t = build_topology(5);
    for (std::size_t i = 0; i < 10; ++i) {
        const NoiseDraw d = sample_noise(spec, t, i);
        for (double v : d.lambdaK) EXPECT_EQ(v, spec.params.lambdaK_mean);
        for (double v : d.lambdaJ) EXPECT_EQ(v, spec.params.lambdaJ_mean);
        for (double v : d.delta_omega) EXPECT_EQ(v, spec.params.delta_omega);
    }
}

TEST(Sampler, DeterministicPerIndex)
{
    NoiseSpec spec;
    spec.master_seed = 12345;
    const RingTopology t = build_topology(6);
    const NoiseDraw a = sample_noise(spec, t, 77);
    const NoiseDraw b = sample_noise(spec, t, 77);
    EXPECT_EQ(a.lambdaK, b.lambdaK);
    EXPECT_EQ(a.lambdaJ, b.lambdaJ);
    EXPECT_NE(a.lambdaK, sample_noise(spec, t, 78).lambdaK);
}

TEST(Sampler, IndexOutOfRange)
{
    NoiseSpec spec;
    spec.n_samples = 3;
    EXPECT_THROW((void)sample_noise(spec, build_topology(4), 3), std::out_of_range);
}

TEST(Sampler, MeanWithinCentralLimit)
{
    NoiseSpec spec;
    spec.master_seed = 9;
    const RingTopology t = build_topology(4);
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.n_samples; ++i) acc += sample_noise(spec, t, i).lambdaK[0];
    const double mean = acc / static_cast<double>(spec.n_samples);
    EXPECT_LE(std::abs(mean - spec.params.lambdaK_mean), 3.0 * spec.params.sigmaK / std::sqrt(1500.0));
}

TEST(Sampler, VarianceAndIndependence)
{
    NoiseSpec spec;
    spec.n_samples = 20000;
    spec.master_seed = 31;
    const RingTopology t = build_topology(4);
    std::vector<double> k(spec.n_samples), j(spec.n_samples);
    for (std::size_t i = 0; i < spec.n_samples; ++i) {
        const NoiseDraw d = sample_noise(spec, t, i);
        k[i] = (d.lambdaK[0] - spec.params.lambdaK_mean) / spec.params.sigmaK;
        j[i] = (d.lambdaJ[0] - spec.params.lambdaJ_mean) / spec.params.sigmaJ;
    }
    auto var = [](const std::vector<double>& v) {
        double m = 0, s = 0;
        for (double x : v) m += x;
        m /= static_cast<double>(v.size());
        for (double x : v) s += (x - m) * (x - m);
        return s / static_cast<double>(v.size() - 1);
    };
    EXPECT_NEAR(var(k), 1.0, 0.05);
    EXPECT_NEAR(var(j), 1.0, 0.05);
    double lag = 0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) lag += k[i] * k[i + 1];
    EXPECT_LE(std::abs(lag / static_cast<double>(k.size() - 1)), 0.05);
}

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <optional>

namespace sweetspot {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Hash a master seed together with work-item coordinates into a stream key.
/// Streams depend only on these values, never on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords)
{
    std::uint64_t key = mix64(master ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t c : coords) {
        key = mix64(key ^ mix64(c + 0x9e3779b97f4a7c15ULL));
    }
    return key;
}

/// Counter-based SplitMix64 stream: the n-th output is mix64(key + (n+1)*gamma),
/// so every value is a pure function of (key, n) with no platform dependence.
/// Normal deviates use Box-Muller; both deviates of a pair are consumed.
class SeededRng {
public:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    explicit SeededRng(std::uint64_t key) : key_(key) {}

    static SeededRng for_stream(std::uint64_t master, std::initializer_list<std::uint64_t> coords)
    {
        return SeededRng(derive_seed(master, coords));
    }

    std::uint64_t next_u64()
    {
        ++counter_;
        return mix64(key_ + counter_ * kGamma);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double normal()
    {
        if (spare_) {
            const double v = *spare_;
            spare_.reset();
            return v;
        }
        // 1 - u lies in (0, 1], keeping the log finite.
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        return r * std::cos(theta);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    [[nodiscard]] std::uint64_t key() const { return key_; }
    [[nodiscard]] std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::optional<double> spare_;
};

} // namespace sweetspot

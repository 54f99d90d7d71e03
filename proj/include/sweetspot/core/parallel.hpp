#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace sweetspot {

inline constexpr const char* kWorkersEnv = "SWEETSPOT_WORKERS";

/// Worker count from SWEETSPOT_WORKERS, else hardware concurrency.
/// Results never depend on this value.
inline std::size_t worker_count()
{
    if (const char* env = std::getenv(kWorkersEnv)) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (...) {
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Run body(i) for i in [0, n). Items are claimed dynamically; callers write
/// results into slot i so the outcome is independent of scheduling.
template <typename Body>
void parallel_for(std::size_t n, Body&& body, std::size_t workers = worker_count())
{
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

/// Ordered pairwise summation; the reduction tree depends only on the length.
inline double pairwise_sum(std::span<const double> xs)
{
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Sample mean and standard error (sample std / sqrt(n)).
inline MeanEstimate mean_and_stderr(std::span<const double> xs)
{
    MeanEstimate out;
    const std::size_t n = xs.size();
    if (n == 0) return out;
    out.mean = pairwise_sum(xs) / static_cast<double>(n);
    if (n < 2) return out;
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = xs[i] - out.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    out.std_error = std::sqrt(var / static_cast<double>(n));
    return out;
}

} // namespace sweetspot

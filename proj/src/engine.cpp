#include "rsma/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rsma/numerics.hpp"

namespace rsma {

unsigned worker_count() {
    if (const char* env = std::getenv("RSMA_WORKERS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1 && parsed <= 4096) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::vector<double> run_trials(std::uint64_t seed, std::uint64_t n_trials, std::size_t width,
                               const TrialFn& fn, unsigned workers) {
    if (n_trials == 0) throw std::invalid_argument("run_trials: need at least one trial");
    if (width == 0) throw std::invalid_argument("run_trials: need width >= 1");
    if (workers == 0) workers = worker_count();

    std::vector<double> out(n_trials * width);

    if (workers == 1 || n_trials < 256) {
        for (std::uint64_t t = 0; t < n_trials; ++t) {
            RngStream rng(seed, t);
            fn(t, rng, std::span<double>(&out[t * width], width));
        }
        return out;
    }

    constexpr std::uint64_t kBlock = 256;
    const std::uint64_t n_blocks = (n_trials + kBlock - 1) / kBlock;
    std::atomic<std::uint64_t> next_block{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto body = [&]() {
        try {
            for (;;) {
                const std::uint64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
                if (b >= n_blocks || failed.load(std::memory_order_relaxed)) return;
                const std::uint64_t begin = b * kBlock;
                const std::uint64_t end = std::min(begin + kBlock, n_trials);
                for (std::uint64_t t = begin; t < end; ++t) {
                    RngStream rng(seed, t);
                    fn(t, rng, std::span<double>(&out[t * width], width));
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

namespace {

double strided_pairwise(const double* xs, std::size_t n, std::size_t stride) {
    if (n <= 32) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += xs[i * stride];
        return acc;
    }
    const std::size_t half = n / 2;
    return strided_pairwise(xs, half, stride) + strided_pairwise(xs + half * stride, n - half, stride);
}

double strided_pairwise_sq_dev(const double* xs, std::size_t n, std::size_t stride, double center) {
    if (n <= 32) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = xs[i * stride] - center;
            acc += d * d;
        }
        return acc;
    }
    const std::size_t half = n / 2;
    return strided_pairwise_sq_dev(xs, half, stride, center) +
           strided_pairwise_sq_dev(xs + half * stride, n - half, stride, center);
}

}  // namespace

double column_mean(std::span<const double> data, std::size_t width, std::size_t col) {
    const std::size_t n = data.size() / width;
    return strided_pairwise(data.data() + col, n, width) / static_cast<double>(n);
}

double column_second_moment(std::span<const double> data, std::size_t width, std::size_t col) {
    const std::size_t n = data.size() / width;
    return strided_pairwise_sq_dev(data.data() + col, n, width, 0.0) / static_cast<double>(n);
}

double column_variance(std::span<const double> data, std::size_t width, std::size_t col) {
    const std::size_t n = data.size() / width;
    const double mean = column_mean(data, width, col);
    return strided_pairwise_sq_dev(data.data() + col, n, width, mean) / static_cast<double>(n);
}

}  // namespace rsma

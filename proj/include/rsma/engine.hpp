#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rsma/randgen.hpp"

namespace rsma {

/// Worker count resolution: RSMA_WORKERS environment variable if set,
/// otherwise the available hardware parallelism.
unsigned worker_count();

using TrialFn = std::function<void(std::uint64_t trial, RngStream& rng, std::span<double> out)>;

/// Runs `fn` once per trial index in [0, n_trials), each with its own
/// counter-based stream RngStream(seed, trial). Results land in a trial-major
/// array of `width` doubles per trial, so the output is byte-identical at any
/// worker count; reductions over it must use a fixed order (pairwise_sum).
/// workers = 0 resolves via worker_count().
std::vector<double> run_trials(std::uint64_t seed, std::uint64_t n_trials, std::size_t width,
                               const TrialFn& fn, unsigned workers = 0);

/// Deterministic column reductions over a trial-major array.
double column_mean(std::span<const double> data, std::size_t width, std::size_t col);
double column_second_moment(std::span<const double> data, std::size_t width, std::size_t col);

/// Population variance (divides by n), consistent with the moment identity
/// E[X^2] - E[X]^2.
double column_variance(std::span<const double> data, std::size_t width, std::size_t col);

}  // namespace rsma

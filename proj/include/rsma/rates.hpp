#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "rsma/channel.hpp"
#include "rsma/gamma_approx.hpp"
#include "rsma/types.hpp"

namespace rsma {

enum class RateMethod { McExact, GammaLemma1, GammaBaseline };

std::string_view to_string(RateMethod method);

/// Ergodic rates in bits/s/Hz. sum_rate = common_rate + sum(private_rates)
/// exactly by construction.
struct RateReport {
    double common_rate = 0.0;
    std::vector<double> private_rates;
    double sum_rate = 0.0;
    RateMethod method = RateMethod::McExact;
    std::uint64_t trials = 0;
    double common_rate_se = 0.0;
    std::vector<double> private_rate_se;
    double sum_rate_se = 0.0;
};

/// Per-trial gains collected once and reused across tau values and rate
/// methods: for every user, |h^H p_c|^2, |h^H p_k|^2, X and Z. Layout is
/// trial-major, four blocks of n_users doubles per trial.
struct TrialRecords {
    std::size_t n_users = 0;
    std::uint64_t trials = 0;
    std::vector<double> data;

    double common_gain(std::uint64_t t, std::size_t k) const { return data[row(t) + k]; }
    double direct_gain(std::uint64_t t, std::size_t k) const { return data[row(t) + n_users + k]; }
    double x_total(std::uint64_t t, std::size_t k) const { return data[row(t) + 2 * n_users + k]; }
    double interference(std::uint64_t t, std::size_t k) const { return data[row(t) + 3 * n_users + k]; }

  private:
    std::size_t row(std::uint64_t t) const { return static_cast<std::size_t>(t) * 4 * n_users; }
};

/// Runs cfg.trials Monte Carlo trials (stream per trial index, deterministic
/// at any worker count) and stores the tau-independent per-user gains.
TrialRecords collect_trial_records(const SystemConfig& cfg, unsigned workers = 0);

/// Exact Monte Carlo rates at cfg.tau evaluated from stored records.
RateReport rates_from_records(const TrialRecords& records, const SystemConfig& cfg);

/// R_c = E[log2(1 + min_k gamma_ck)], R_k = E[log2(1 + gamma_pk)].
RateReport mc_sum_rate(const SystemConfig& cfg);

/// Gamma-surrogate private rate of user k:
/// E[log2(1 + (S_k tau / K) X)] - E[log2(1 + (S_k tau / K) Z)], with the Z
/// term zero in the degenerate cases (K = 1 or epsilon = 1).
double approx_private_rate(const SystemConfig& cfg, std::size_t k, const GammaParams& x_params);

/// Surrogate private rates plus a Monte Carlo common rate. The common rate
/// comes from the same seeded trials as mc_sum_rate, so lemma1/baseline
/// reports differ only through the private-rate surrogates.
RateReport approx_sum_rate(const SystemConfig& cfg, RateMethod which);

RateReport approx_sum_rate_from_records(const TrialRecords& records, const SystemConfig& cfg,
                                        RateMethod which);

}  // namespace rsma

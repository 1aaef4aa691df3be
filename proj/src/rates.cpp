#include "rsma/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "rsma/engine.hpp"
#include "rsma/numerics.hpp"
#include "rsma/precoding.hpp"
#include "rsma/sinr_stats.hpp"

namespace rsma {

std::string_view to_string(RateMethod method) {
    switch (method) {
        case RateMethod::McExact: return "mc-exact";
        case RateMethod::GammaLemma1: return "gamma-lemma1";
        case RateMethod::GammaBaseline: return "gamma-baseline";
    }
    return "unknown";
}

TrialRecords collect_trial_records(const SystemConfig& cfg, unsigned workers) {
    validate(cfg);
    const std::size_t ku = cfg.n_users;

    TrialRecords records;
    records.n_users = ku;
    records.trials = cfg.trials;
    records.data = run_trials(
        cfg.seed, cfg.trials, 4 * ku,
        [&cfg, ku](std::uint64_t, RngStream& rng, std::span<double> out) {
            const TrialDraw draw = draw_trial(rng, cfg);
            for (std::size_t k = 0; k < ku; ++k) {
                const ComplexVector h = draw.channel.h_now.column(k);
                out[k] = std::norm(hermitian_inner(h, draw.precoders.common_beam));
                out[ku + k] =
                    std::norm(hermitian_inner(h, draw.precoders.private_precoders.column(k)));
                out[2 * ku + k] = compute_X(draw.channel, draw.precoders, k);
                out[3 * ku + k] = compute_Z(draw.channel, draw.precoders, k);
            }
        },
        workers);
    return records;
}

RateReport rates_from_records(const TrialRecords& records, const SystemConfig& cfg) {
    const std::size_t ku = records.n_users;
    const std::uint64_t n = records.trials;
    if (ku != cfg.n_users || n == 0)
        throw std::invalid_argument("rates_from_records: records do not match config");

    const double alpha_priv = cfg.tau / static_cast<double>(ku);
    const double alpha_common = 1.0 - cfg.tau;

    // Per-trial log terms, trial-major: [common | user 0 .. user K-1].
    std::vector<double> terms(static_cast<std::size_t>(n) * (ku + 1));
    for (std::uint64_t t = 0; t < n; ++t) {
        double min_gamma_c = std::numeric_limits<double>::infinity();
        double* row = &terms[static_cast<std::size_t>(t) * (ku + 1)];
        for (std::size_t k = 0; k < ku; ++k) {
            const double snr = cfg.snr_linear(k);
            const double gamma_c = snr * alpha_common * records.common_gain(t, k) /
                                   (1.0 + snr * alpha_priv * records.x_total(t, k));
            min_gamma_c = std::min(min_gamma_c, gamma_c);
            const double gamma_p = snr * alpha_priv * records.direct_gain(t, k) /
                                   (1.0 + snr * alpha_priv * records.interference(t, k));
            row[1 + k] = std::log1p(gamma_p) / M_LN2;
        }
        row[0] = std::log1p(min_gamma_c) / M_LN2;
    }

    RateReport report;
    report.method = RateMethod::McExact;
    report.trials = n;
    report.private_rates.resize(ku);
    report.private_rate_se.resize(ku);

    const std::span<const double> view(terms);
    const double dn = static_cast<double>(n);
    report.common_rate = column_mean(view, ku + 1, 0);
    report.common_rate_se =
        n > 1 ? std::sqrt(column_variance(view, ku + 1, 0) / (dn - 1.0)) : 0.0;
    double total = report.common_rate;
    for (std::size_t k = 0; k < ku; ++k) {
        report.private_rates[k] = column_mean(view, ku + 1, 1 + k);
        report.private_rate_se[k] =
            n > 1 ? std::sqrt(column_variance(view, ku + 1, 1 + k) / (dn - 1.0)) : 0.0;
        total += report.private_rates[k];
    }
    report.sum_rate = total;

    // Standard error of the per-trial total (terms within a trial are
    // correlated, so this is not the quadrature sum of the per-column SEs).
    std::vector<double> trial_totals(n);
    for (std::uint64_t t = 0; t < n; ++t) {
        const double* row = &terms[static_cast<std::size_t>(t) * (ku + 1)];
        double acc = 0.0;
        for (std::size_t c = 0; c <= ku; ++c) acc += row[c];
        trial_totals[t] = acc;
    }
    report.sum_rate_se =
        n > 1 ? std::sqrt(column_variance(trial_totals, 1, 0) / (dn - 1.0)) : 0.0;
    return report;
}

RateReport mc_sum_rate(const SystemConfig& cfg) {
    return rates_from_records(collect_trial_records(cfg), cfg);
}

double approx_private_rate(const SystemConfig& cfg, std::size_t k, const GammaParams& x_params) {
    validate(cfg);
    if (k >= cfg.n_users) throw std::invalid_argument("approx_private_rate: user out of range");
    if (!x_params.valid()) throw std::invalid_argument("approx_private_rate: invalid X params");

    const double s = cfg.snr_linear(k) * cfg.tau / static_cast<double>(cfg.n_users);
    if (s == 0.0) return 0.0;
    const double x_term = gamma_log_expectation(x_params, s);
    double z_term = 0.0;
    try {
        z_term = gamma_log_expectation(z_params(cfg.n_users, cfg.epsilon), s);
    } catch (const DegenerateZError&) {
        z_term = 0.0;  // Z is a point mass at zero
    }
    return x_term - z_term;
}

RateReport approx_sum_rate_from_records(const TrialRecords& records, const SystemConfig& cfg,
                                        RateMethod which) {
    if (which == RateMethod::McExact)
        throw std::invalid_argument("approx_sum_rate: use mc_sum_rate for the exact method");
    const GammaParams x_params = which == RateMethod::GammaLemma1
                                     ? lemma1_params(cfg.n_tx, cfg.n_users, cfg.epsilon)
                                     : baseline_params(cfg.n_tx, cfg.n_users, cfg.epsilon);

    // Shared Monte Carlo common rate: the surrogate only models the private
    // stream statistics, so R_c comes from the same trials for every method.
    const RateReport mc = rates_from_records(records, cfg);

    RateReport report;
    report.method = which;
    report.trials = records.trials;
    report.common_rate = mc.common_rate;
    report.common_rate_se = mc.common_rate_se;
    report.private_rates.resize(cfg.n_users);
    report.private_rate_se.assign(cfg.n_users, 0.0);
    double total = report.common_rate;
    for (std::size_t k = 0; k < cfg.n_users; ++k) {
        report.private_rates[k] = approx_private_rate(cfg, k, x_params);
        total += report.private_rates[k];
    }
    report.sum_rate = total;
    report.sum_rate_se = mc.common_rate_se;
    return report;
}

RateReport approx_sum_rate(const SystemConfig& cfg, RateMethod which) {
    return approx_sum_rate_from_records(collect_trial_records(cfg), cfg, which);
}

}  // namespace rsma

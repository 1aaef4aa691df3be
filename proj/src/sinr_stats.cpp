#include "rsma/sinr_stats.hpp"

#include <cmath>
#include <stdexcept>

#include "rsma/numerics.hpp"

namespace rsma {

namespace {

void check_user(const ChannelPair& ch, std::size_t k) {
    if (k >= ch.h_now.cols) throw std::invalid_argument("user index out of range");
}

}  // namespace

double compute_X(const ChannelPair& ch, const PrecoderSet& pre, std::size_t k) {
    check_user(ch, k);
    const ComplexVector h = ch.h_now.column(k);
    double acc = 0.0;
    for (std::size_t j = 0; j < pre.private_precoders.cols; ++j)
        acc += std::norm(hermitian_inner(h, pre.private_precoders.column(j)));
    return acc;
}

double compute_Z(const ChannelPair& ch, const PrecoderSet& pre, std::size_t k) {
    check_user(ch, k);
    const ComplexVector h = ch.h_now.column(k);
    double acc = 0.0;
    for (std::size_t j = 0; j < pre.private_precoders.cols; ++j) {
        if (j == k) continue;
        acc += std::norm(hermitian_inner(h, pre.private_precoders.column(j)));
    }
    return acc;
}

double compute_X_CC(const ChannelPair& ch, const PrecoderSet& pre, std::size_t k) {
    check_user(ch, k);
    const double eps = ch.epsilon;
    const double factor = 2.0 * eps * std::sqrt(1.0 - eps * eps);
    if (factor == 0.0) return 0.0;
    const ComplexVector pk = pre.private_precoders.column(k);
    const Complex outdated = hermitian_inner(ch.h_prev.column(k), pk);
    const Complex error = hermitian_inner(ch.innovation.column(k), pk);
    return factor * (std::conj(outdated) * error).real();
}

SinrPair compute_sinrs(const ChannelPair& ch, const PrecoderSet& pre,
                       const SystemConfig& cfg, std::size_t k) {
    check_user(ch, k);
    const double snr = cfg.snr_linear(k);
    const double alpha_priv = cfg.tau / static_cast<double>(cfg.n_users);
    const ComplexVector h = ch.h_now.column(k);

    const double common_gain = std::norm(hermitian_inner(h, pre.common_beam));
    const double direct_gain = std::norm(hermitian_inner(h, pre.private_precoders.column(k)));
    const double x = compute_X(ch, pre, k);
    const double z = compute_Z(ch, pre, k);

    SinrPair out;
    out.common = snr * (1.0 - cfg.tau) * common_gain / (1.0 + snr * alpha_priv * x);
    out.priv = snr * alpha_priv * direct_gain / (1.0 + snr * alpha_priv * z);
    return out;
}

TrialStatistics compute_trial_statistics(const ChannelPair& ch, const PrecoderSet& pre,
                                         const SystemConfig& cfg) {
    const std::size_t k_users = ch.h_now.cols;
    TrialStatistics stats;
    stats.x_total.resize(k_users);
    stats.interference.resize(k_users);
    stats.cross_term.resize(k_users);
    stats.gamma_common.resize(k_users);
    stats.gamma_private.resize(k_users);
    for (std::size_t k = 0; k < k_users; ++k) {
        stats.x_total[k] = compute_X(ch, pre, k);
        stats.interference[k] = compute_Z(ch, pre, k);
        stats.cross_term[k] = compute_X_CC(ch, pre, k);
        const SinrPair sinr = compute_sinrs(ch, pre, cfg, k);
        stats.gamma_common[k] = sinr.common;
        stats.gamma_private[k] = sinr.priv;
    }
    return stats;
}

}  // namespace rsma

#pragma once

#include <vector>

#include "rsma/channel.hpp"
#include "rsma/precoding.hpp"
#include "rsma/types.hpp"

namespace rsma {

/// Per-trial exact statistics for every user. X >= Z >= 0 always; X_CC is
/// signed and vanishes identically at epsilon in {0, 1}.
struct TrialStatistics {
    std::vector<double> x_total;        // X_k  = sum_j |h_k[m]^H p_j|^2
    std::vector<double> interference;   // Z_k  = sum_{j != k} |h_k[m]^H p_j|^2
    std::vector<double> cross_term;     // X_CC,k
    std::vector<double> gamma_common;   // common-stream SINR, linear
    std::vector<double> gamma_private;  // private-stream SINR, linear
};

/// Total received private-stream power at user k from the current channel.
double compute_X(const ChannelPair& ch, const PrecoderSet& pre, std::size_t k);

/// Interference-only part of X (direct stream excluded).
double compute_Z(const ChannelPair& ch, const PrecoderSet& pre, std::size_t k);

/// Signed cross-correlation between the outdated-channel and innovation
/// contributions of the direct stream:
///   2 eps sqrt(1-eps^2) Re{ conj(h_prev_k^H p_k) (e_k^H p_k) },
/// so that X = (1-eps^2) sum_j |e_k^H p_j|^2 + eps^2 |h_prev_k^H p_k|^2 + X_CC
/// holds per trial up to the zero-forcing floating-point residual.
double compute_X_CC(const ChannelPair& ch, const PrecoderSet& pre, std::size_t k);

struct SinrPair {
    double common = 0.0;   // gamma_ck
    double priv = 0.0;     // gamma_pk
};

/// Normalized SINRs with alpha_c = 1 - tau and alpha_j = tau / K:
///   gamma_c = S_k (1-tau) |h_k^H p_c|^2 / (1 + S_k (tau/K) X)
///   gamma_p = S_k (tau/K) |h_k^H p_k|^2 / (1 + S_k (tau/K) Z)
SinrPair compute_sinrs(const ChannelPair& ch, const PrecoderSet& pre,
                       const SystemConfig& cfg, std::size_t k);

TrialStatistics compute_trial_statistics(const ChannelPair& ch, const PrecoderSet& pre,
                                         const SystemConfig& cfg);

}  // namespace rsma

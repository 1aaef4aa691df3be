#pragma once

#include <cstdint>
#include <vector>

#include "rsma/randgen.hpp"
#include "rsma/types.hpp"

namespace rsma {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct MobilityParams {
    double velocity_mps = 0.0;     // v
    double carrier_hz = 0.0;       // f_c
    double slot_interval_s = 0.0;  // T
};

/// Jakes temporal correlation J0(2 pi f_D T) with f_D = v f_c / c. The value
/// is returned signed in [-1, 1]; the channel model only uses epsilon^2, so
/// conversion to a SystemConfig takes the magnitude (see experiments layer).
double jakes_epsilon(const MobilityParams& mob);

/// Scenario parameters. Propagation loss and noise power never appear
/// separately anywhere; only the per-user ratio S_k = P L_k / sigma_k^2 (in
/// dB) enters the computed quantities.
struct SystemConfig {
    std::size_t n_tx = 16;    // transmit antennas, must exceed n_users
    std::size_t n_users = 4;  // single-antenna users
    double epsilon = 0.5;     // temporal correlation in [0, 1]
    double tau = 1.0;         // fraction of power on private streams
    std::vector<double> snr_db = {20.0};  // per user; size 1 broadcasts
    std::uint64_t seed = 42;
    std::uint64_t trials = 100000;

    double snr_linear(std::size_t k) const;
};

/// Throws std::invalid_argument naming the offending field. In particular
/// n_tx <= n_users is rejected: zero-forcing needs more transmit antennas
/// than users.
void validate(const SystemConfig& cfg);

/// One correlated channel realization: h_k[m] = eps h_k[m-1] + sqrt(1-eps^2) e_k[m],
/// columns are users. The transmitter only ever sees h_prev.
struct ChannelPair {
    ComplexMatrix h_prev;      // N_t x K at slot m-1
    ComplexMatrix innovation;  // N_t x K, independent of h_prev
    ComplexMatrix h_now;       // N_t x K at slot m
    double epsilon = 0.0;
};

ChannelPair draw_channel_pair(RngStream& rng, const SystemConfig& cfg);

}  // namespace rsma

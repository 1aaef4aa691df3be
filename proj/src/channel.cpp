#include "rsma/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rsma/numerics.hpp"

namespace rsma {

double jakes_epsilon(const MobilityParams& mob) {
    if (!(mob.velocity_mps >= 0.0))
        throw std::invalid_argument("jakes_epsilon: velocity must be >= 0");
    if (!(mob.carrier_hz > 0.0))
        throw std::invalid_argument("jakes_epsilon: carrier frequency must be > 0");
    if (!(mob.slot_interval_s > 0.0))
        throw std::invalid_argument("jakes_epsilon: instantiation interval must be > 0");
    const double doppler_hz = mob.velocity_mps * mob.carrier_hz / kSpeedOfLight;
    return bessel_j0(2.0 * M_PI * doppler_hz * mob.slot_interval_s);
}

double SystemConfig::snr_linear(std::size_t k) const {
    const double db = snr_db.size() == 1 ? snr_db[0] : snr_db.at(k);
    return std::pow(10.0, db / 10.0);
}

void validate(const SystemConfig& cfg) {
    if (cfg.n_users < 1)
        throw std::invalid_argument("config error at 'k': need at least one user");
    if (cfg.n_tx <= cfg.n_users)
        throw std::invalid_argument(
            "config error at 'nt': N_t > K required (zero-forcing needs more transmit "
            "antennas than users; got N_t = " + std::to_string(cfg.n_tx) +
            ", K = " + std::to_string(cfg.n_users) + ")");
    if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0))
        throw std::invalid_argument("config error at 'epsilon': must lie in [0, 1]");
    if (!(cfg.tau >= 0.0 && cfg.tau <= 1.0))
        throw std::invalid_argument("config error at 'tau': must lie in [0, 1]");
    if (cfg.snr_db.empty() || (cfg.snr_db.size() != 1 && cfg.snr_db.size() != cfg.n_users))
        throw std::invalid_argument(
            "config error at 'snr_db': provide one value or one per user");
    for (double v : cfg.snr_db)
        if (!std::isfinite(v) && !(v == -std::numeric_limits<double>::infinity()))
            throw std::invalid_argument(
                "config error at 'snr_db': values must be finite or -inf (zero power)");
    if (cfg.trials < 1)
        throw std::invalid_argument("config error at 'trials': need at least one trial");
}

ChannelPair draw_channel_pair(RngStream& rng, const SystemConfig& cfg) {
    validate(cfg);
    const std::size_t n = cfg.n_tx;
    const std::size_t k = cfg.n_users;
    const double eps = cfg.epsilon;
    const double mix = std::sqrt(1.0 - eps * eps);

    ChannelPair pair;
    pair.epsilon = eps;
    pair.h_prev = ComplexMatrix(n, k);
    pair.innovation = ComplexMatrix(n, k);
    pair.h_now = ComplexMatrix(n, k);

    // Draw order is fixed (h_prev then innovation, column by column) so a
    // trial stream always reproduces the same realization.
    constexpr double kInvSqrt2 = 0.70710678118654752;
    for (std::size_t idx = 0; idx < n * k; ++idx)
        pair.h_prev.data[idx] = Complex(rng.normal() * kInvSqrt2, rng.normal() * kInvSqrt2);
    for (std::size_t idx = 0; idx < n * k; ++idx)
        pair.innovation.data[idx] = Complex(rng.normal() * kInvSqrt2, rng.normal() * kInvSqrt2);
    for (std::size_t idx = 0; idx < n * k; ++idx)
        pair.h_now.data[idx] = eps * pair.h_prev.data[idx] + mix * pair.innovation.data[idx];
    return pair;
}

}  // namespace rsma

#include "rsma/precoding.hpp"

#include <cmath>
#include <stdexcept>

#include "rsma/numerics.hpp"

namespace rsma {

PrecoderSet zf_precoders(const ComplexMatrix& h_prev, RngStream& rng) {
    PrecoderSet set;
    set.private_precoders = matmul(h_prev, gram_inverse(h_prev));

    // Per-column normalization; scaling cannot break the nulling property.
    const std::size_t n = set.private_precoders.rows;
    const std::size_t k = set.private_precoders.cols;
    for (std::size_t j = 0; j < k; ++j) {
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm_sq += std::norm(set.private_precoders(i, j));
        if (!(norm_sq > 0.0)) throw SingularGramError();
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (std::size_t i = 0; i < n; ++i) set.private_precoders(i, j) *= inv;
    }

    set.common_beam = isotropic_unit_vector(rng, n);
    return set;
}

TrialDraw draw_trial(RngStream& rng, const SystemConfig& cfg) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        TrialDraw draw;
        draw.channel = draw_channel_pair(rng, cfg);
        try {
            draw.precoders = zf_precoders(draw.channel.h_prev, rng);
        } catch (const SingularGramError&) {
            continue;  // probability-zero event for continuous channels
        }
        return draw;
    }
    throw std::runtime_error("draw_trial: persistent singular Gram matrix");
}

}  // namespace rsma

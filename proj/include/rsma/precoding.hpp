#pragma once

#include "rsma/channel.hpp"
#include "rsma/randgen.hpp"
#include "rsma/types.hpp"

namespace rsma {

/// Zero-forcing private precoders plus the random common beamformer.
/// Columns of private_precoders have unit norm and satisfy
/// h_j_prev^H p_k = 0 for all j != k.
struct PrecoderSet {
    ComplexMatrix private_precoders;  // N_t x K
    ComplexVector common_beam;        // length N_t, unit norm
};

/// P = H (H^H H)^{-1} with each column rescaled to unit norm; the common
/// beamformer is drawn isotropically, independent of the channel.
/// Propagates SingularGramError on degenerate draws (caller resamples).
PrecoderSet zf_precoders(const ComplexMatrix& h_prev, RngStream& rng);

struct TrialDraw {
    ChannelPair channel;
    PrecoderSet precoders;
};

/// Channel pair + precoders, resampling the channel on SingularGramError.
TrialDraw draw_trial(RngStream& rng, const SystemConfig& cfg);

}  // namespace rsma

#pragma once

#include <cstdint>

#include "rsma/types.hpp"

namespace rsma {

/// Deterministic counter-based random stream: the pair (seed, stream_id)
/// fully determines the output sequence, so the Monte Carlo engine can hand
/// one stream to each trial and run trials in any order or in parallel.
///
/// xoshiro256++ core seeded through SplitMix64.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64();
    double uniform();      // [0, 1)
    double uniform_pos();  // (0, 1], safe for log()
    double normal();       // N(0, 1), Marsaglia polar method

  private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Length-n vector of i.i.d. CN(0,1) entries (real and imaginary parts each
/// N(0, 1/2), unit per-entry variance).
ComplexVector complex_gaussian_vector(RngStream& rng, std::size_t n);

/// Gamma(shape, scale) draw via Marsaglia-Tsang, with the U^{1/shape} boost
/// for shape < 1. Throws std::invalid_argument on nonpositive parameters.
double gamma_variate(RngStream& rng, const GammaParams& params);

/// Unit-norm vector uniform on the complex n-sphere (normalized CN(0, I) draw).
ComplexVector isotropic_unit_vector(RngStream& rng, std::size_t n);

}  // namespace rsma

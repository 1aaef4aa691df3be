#pragma once

#include <cstddef>
#include <stdexcept>

#include "rsma/types.hpp"

namespace rsma {

/// Z collapses to a point mass at zero (K = 1, or epsilon so close to 1 that
/// the scale 1 - epsilon^2 degenerates). Callers handle this case analytically.
struct DegenerateZError : std::runtime_error {
    DegenerateZError() : std::runtime_error("degenerate Z distribution (point mass at 0)") {}
};

/// Variance correction carried by the cross-correlation term:
/// mu = 2 eps^2 (1 - eps^2) (N_t - K + 1).
double mu_correction(std::size_t n_tx, std::size_t n_users, double epsilon);

/// Improved moment-matched Gamma surrogate for X:
///   D = mean^2 / var,  Theta = var / mean,
///   mean = K(1-eps^2) + (N_t-K+1) eps^2,
///   var  = eps^4 (N_t+1) + (1-2 eps^2) K + mu.
GammaParams lemma1_params(std::size_t n_tx, std::size_t n_users, double epsilon);

/// Prior approximation: same expressions with mu set to zero. Throws
/// std::domain_error if the resulting variance is not positive.
GammaParams baseline_params(std::size_t n_tx, std::size_t n_users, double epsilon);

/// Exact law of the interference power: Z ~ Gamma(K-1, 1-eps^2).
/// Throws DegenerateZError for K = 1 or 1 - eps^2 below 1e-12.
GammaParams z_params(std::size_t n_users, double epsilon);

/// Closed-form second-moment decomposition E{X^2} = zeta1+zeta2+zeta3+zeta4:
///   zeta1 = (K + K^2)(1-eps^2)^2
///   zeta2 = (phi + phi^2) eps^4,          phi = N_t - K + 1
///   zeta3 = 2 (1-eps^2) eps^2 K phi
///   zeta4 = mu
/// variance is defined as zeta1+zeta2+zeta3+zeta4 - mean^2, which matches the
/// compact closed form used by lemma1_params.
struct MomentReport {
    double mean = 0.0;
    double variance = 0.0;
    double mu = 0.0;
    double zeta1 = 0.0;
    double zeta2 = 0.0;
    double zeta3 = 0.0;
    double zeta4 = 0.0;
    double phi = 0.0;
};

MomentReport moment_report(std::size_t n_tx, std::size_t n_users, double epsilon);

}  // namespace rsma

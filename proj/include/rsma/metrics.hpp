#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rsma/types.hpp"

namespace rsma {

/// Density-normalized histogram: sum_i density_i * width_i = 1.
struct EmpiricalPdf {
    std::vector<double> bin_edges;  // M + 1, strictly increasing
    std::vector<double> density;    // M, nonnegative
    std::size_t sample_count = 0;

    std::size_t bins() const { return density.size(); }
    double midpoint(std::size_t i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
    double bin_width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
};

/// Equal-width histogram over [min sample, max sample]. Throws
/// std::invalid_argument on empty/non-finite input, fewer than 2 bins, or a
/// zero-width support (all samples identical).
EmpiricalPdf estimate_pdf(std::span<const double> samples, std::size_t bins);

/// Gamma density x^{D-1} e^{-x/Theta} / (Gamma(D) Theta^D) for x >= 0.
double gamma_pdf(const GammaParams& params, double x);

/// Gamma CDF (regularized lower incomplete gamma).
double gamma_cdf(const GammaParams& params, double x);

/// (1/M) sum_k (emp(x_k) - gamma(x_k))^2 over the bin midpoints x_k.
double pdf_mse(const EmpiricalPdf& emp, const GammaParams& params);

/// Sup distance between the empirical CDF of the samples and the Gamma CDF.
double ks_statistic(std::span<const double> samples, const GammaParams& params);

}  // namespace rsma

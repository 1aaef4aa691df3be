#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "rsma/types.hpp"

namespace rsma {

/// The Gram matrix H^H H is numerically singular. Continuous channel draws hit
/// this with probability zero, so callers treat it as "resample", not a crash.
struct SingularGramError : std::runtime_error {
    SingularGramError() : std::runtime_error("singular or ill-conditioned Gram matrix") {}
};

/// sum_i conj(a_i) * b_i. Throws std::invalid_argument on length mismatch.
Complex hermitian_inner(const ComplexVector& a, const ComplexVector& b);

/// A^H * B for matrices with matching row counts.
ComplexMatrix conj_transpose_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// (H^H H)^{-1} via Cholesky of the K x K Gram matrix; H must be tall
/// (rows > cols). Pivots below 1e-12 of the largest raise SingularGramError.
/// The result is Hermitian by construction.
ComplexMatrix gram_inverse(const ComplexMatrix& h);

/// Bessel function of the first kind, order zero. Power series up to x = 12,
/// Hankel asymptotic expansion beyond; absolute error below 1e-9 on [0, 100].
double bessel_j0(double x);

/// ln Gamma(x) for x > 0 (Lanczos approximation, g = 7, 9 terms).
double lgamma_fn(double x);

/// Regularized lower incomplete gamma P(a, x), series / continued-fraction split.
double regularized_gamma_p(double a, double x);

/// Nodes and probability weights for expectations against a Gamma(shape, 1)
/// density: E[f(T)] ~= sum_i weights_i * f(nodes_i). Weights sum to one.
struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing, all > 0
    std::vector<double> weights;  // all > 0
    int order = 0;
};

/// Generalized Gauss-Laguerre rule with alpha = shape - 1, normalized by
/// Gamma(shape) so the weights integrate the Gamma density exactly.
/// order = 0 picks the default (64 nodes, 256 when shape < 0.5).
QuadratureRule gamma_quadrature_rule(double shape, int order = 0);

/// E[log2(1 + s*X)] in bits for X ~ Gamma(params.shape, params.scale), s >= 0,
/// by fixed-node quadrature against the Gamma weight.
double gamma_log_expectation(const GammaParams& params, double s);

/// Deterministic pairwise summation (fixed tree order, independent of any
/// threading used to produce the data).
double pairwise_sum(std::span<const double> xs);

}  // namespace rsma

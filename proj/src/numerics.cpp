#include "rsma/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace rsma {

Complex hermitian_inner(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hermitian_inner: length mismatch");
    if (a.empty())
        throw std::invalid_argument("hermitian_inner: empty vectors");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

ComplexMatrix conj_transpose_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows != b.rows)
        throw std::invalid_argument("conj_transpose_product: row count mismatch");
    ComplexMatrix out(a.cols, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const Complex* ra = &a.data[i * a.cols];
        const Complex* rb = &b.data[i * b.cols];
        for (std::size_t p = 0; p < a.cols; ++p) {
            const Complex ca = std::conj(ra[p]);
            Complex* ro = &out.data[p * b.cols];
            for (std::size_t q = 0; q < b.cols; ++q) ro[q] += ca * rb[q];
        }
    }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows)
        throw std::invalid_argument("matmul: inner dimension mismatch");
    ComplexMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t p = 0; p < a.cols; ++p) {
            const Complex ca = a(i, p);
            const Complex* rb = &b.data[p * b.cols];
            Complex* ro = &out.data[i * b.cols];
            for (std::size_t q = 0; q < b.cols; ++q) ro[q] += ca * rb[q];
        }
    }
    return out;
}

ComplexMatrix gram_inverse(const ComplexMatrix& h) {
    if (h.rows <= h.cols || h.cols == 0)
        throw std::invalid_argument("gram_inverse: matrix must be tall (rows > cols >= 1)");

    const std::size_t k = h.cols;
    ComplexMatrix gram = conj_transpose_product(h, h);

    // In-place lower Cholesky G = L L^H; pivots are the squared diagonal.
    constexpr double kPivotTol = 1e-12;
    std::vector<double> pivots(k);
    ComplexMatrix low(k, k);
    double max_pivot = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        double d = gram(j, j).real();
        for (std::size_t l = 0; l < j; ++l) d -= std::norm(low(j, l));
        max_pivot = std::max(max_pivot, d);
        if (!(d > 0.0) || d <= kPivotTol * max_pivot) throw SingularGramError();
        pivots[j] = d;
        const double root = std::sqrt(d);
        low(j, j) = root;
        for (std::size_t i = j + 1; i < k; ++i) {
            Complex acc = gram(i, j);
            for (std::size_t l = 0; l < j; ++l) acc -= low(i, l) * std::conj(low(j, l));
            low(i, j) = acc / root;
        }
    }

    // L^{-1} by forward substitution, then G^{-1} = L^{-H} L^{-1}.
    ComplexMatrix linv(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        linv(j, j) = 1.0 / low(j, j);
        for (std::size_t i = j + 1; i < k; ++i) {
            Complex acc(0.0, 0.0);
            for (std::size_t l = j; l < i; ++l) acc += low(i, l) * linv(l, j);
            linv(i, j) = -acc / low(i, i);
        }
    }

    ComplexMatrix inv(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t l = j; l < k; ++l) acc += std::conj(linv(l, i)) * linv(l, j);
            inv(i, j) = acc;
            inv(j, i) = std::conj(acc);  // exactly Hermitian
        }
        inv(i, i) = Complex(inv(i, i).real(), 0.0);
    }
    return inv;
}

double bessel_j0(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("bessel_j0: non-finite argument");
    const double ax = std::fabs(x);

    if (ax <= 12.0) {
        // sum_k (-1)^k (x/2)^{2k} / (k!)^2
        const double q = 0.25 * ax * ax;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= -q / (static_cast<double>(k) * static_cast<double>(k));
            sum += term;
            if (std::fabs(term) < 1e-17 * (std::fabs(sum) + 1e-300)) break;
        }
        return sum;
    }

    // Hankel expansion: J0 = sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4)).
    const double inv2 = 1.0 / (ax * ax);
    const double p = 1.0 + inv2 * (-9.0 / 128.0 +
                     inv2 * (3675.0 / 32768.0 +
                     inv2 * (-2401245.0 / 4194304.0 +
                     inv2 * (13043905875.0 / 2199023255552.0))));
    const double q = (1.0 / ax) * (-1.0 / 8.0 +
                     inv2 * (75.0 / 1024.0 +
                     inv2 * (-59535.0 / 262144.0 +
                     inv2 * (57972915.0 / 33554432.0))));
    const double phase = ax - 0.78539816339744831;
    return std::sqrt(0.63661977236758134 / ax) * (p * std::cos(phase) - q * std::sin(phase));
}

double lgamma_fn(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("lgamma_fn: requires x > 0");
    // Lanczos, g = 7, n = 9 (Godfrey coefficients).
    static const double coeff[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(M_PI / std::sin(M_PI * x)) - lgamma_fn(1.0 - x);
    }
    const double z = x - 1.0;
    double acc = coeff[0];
    for (int i = 1; i < 9; ++i) acc += coeff[i] / (z + i);
    const double t = z + 7.5;
    return 0.91893853320467274 + (z + 0.5) * std::log(t) - t + std::log(acc);
}

namespace {

double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(a * std::log(x) - x - lgamma_fn(a));
}

// Lentz continued fraction for Q(a, x), valid for x > a + 1.
double gamma_q_contfrac(double a, double x) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double frac = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        frac *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return frac * std::exp(a * std::log(x) - x - lgamma_fn(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("regularized_gamma_p: requires a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

namespace {

// Orthonormal-polynomial recurrence for the Gamma(shape, 1) probability
// measure (generalized Laguerre Jacobi matrix):
//   diag_k = 2k + shape,  offdiag_k = sqrt((k+1)(k+shape)).
struct GammaJacobi {
    std::vector<double> diag;
    std::vector<double> off;  // off[k] couples k and k+1

    GammaJacobi(int n, double shape) : diag(n), off(n > 0 ? n - 1 : 0) {
        for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + shape;
        for (int k = 0; k + 1 < n; ++k)
            off[k] = std::sqrt((k + 1.0) * (k + shape));
    }

    // Sturm count: number of eigenvalues strictly below x.
    int count_below(double x) const {
        int count = 0;
        double d = diag[0] - x;
        if (d < 0.0) ++count;
        for (std::size_t k = 1; k < diag.size(); ++k) {
            if (std::fabs(d) < 1e-300) d = -1e-300;
            d = (diag[k] - x) - off[k - 1] * off[k - 1] / d;
            if (d < 0.0) ++count;
        }
        return count;
    }

    // Christoffel number of the normalized measure: 1 / sum_k p_k(x)^2.
    double weight_at(double x) const {
        double p_prev = 0.0, p = 1.0, sum = 1.0;
        for (std::size_t k = 0; k + 1 < diag.size(); ++k) {
            const double p_next = ((x - diag[k]) * p - (k > 0 ? off[k - 1] : 0.0) * p_prev) / off[k];
            p_prev = p;
            p = p_next;
            sum += p * p;
            if (!std::isfinite(sum)) return 0.0;  // far-tail node, weight underflows
        }
        return 1.0 / sum;
    }
};

}  // namespace

QuadratureRule gamma_quadrature_rule(double shape, int order) {
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw std::invalid_argument("gamma_quadrature_rule: requires shape > 0");
    const int n = order > 0 ? order : (shape < 0.5 ? 256 : 64);

    const GammaJacobi jacobi(n, shape);
    double upper = 0.0;
    for (int k = 0; k < n; ++k) {
        double radius = jacobi.diag[k];
        if (k > 0) radius += jacobi.off[k - 1];
        if (k + 1 < n) radius += jacobi.off[k];
        upper = std::max(upper, radius);
    }

    QuadratureRule rule;
    for (int i = 0; i < n; ++i) {
        double lo = 0.0, hi = upper;
        for (int it = 0; it < 120 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            (jacobi.count_below(mid) <= i ? lo : hi) = mid;
        }
        const double node = 0.5 * (lo + hi);
        const double weight = jacobi.weight_at(node);
        if (weight <= 0.0) break;  // remaining tail nodes underflow; drop them
        rule.nodes.push_back(node);
        rule.weights.push_back(weight);
    }
    rule.order = static_cast<int>(rule.nodes.size());

    for (int i = 0; i < rule.order; ++i) {
        if (!(rule.nodes[i] > 0.0) || !(rule.weights[i] > 0.0) ||
            (i > 0 && rule.nodes[i] <= rule.nodes[i - 1]))
            throw std::runtime_error("gamma_quadrature_rule: invalid rule");
    }
    if (rule.order < n / 2)
        throw std::runtime_error("gamma_quadrature_rule: too few usable nodes");
    return rule;
}

double gamma_log_expectation(const GammaParams& params, double s) {
    if (!params.valid())
        throw std::invalid_argument("gamma_log_expectation: invalid Gamma parameters");
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("gamma_log_expectation: requires s >= 0");
    if (s == 0.0) return 0.0;

    // 256 nodes throughout: log1p(s*scale*t) has a branch point at
    // -1/(s*scale), and for large s*scale it sits close enough to the support
    // that 64 nodes leave ~1e-4 residuals at small shapes.
    const QuadratureRule rule = gamma_quadrature_rule(params.shape, 256);
    const double c = s * params.scale;
    double acc = 0.0;
    for (int i = 0; i < rule.order; ++i)
        acc += rule.weights[i] * std::log1p(c * rule.nodes[i]);
    return acc / M_LN2;
}

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 32) {
        double acc = 0.0;
        for (double v : xs) acc += v;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace rsma

#include "rsma/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rsma/numerics.hpp"

namespace rsma {

EmpiricalPdf estimate_pdf(std::span<const double> samples, std::size_t bins) {
    if (samples.empty()) throw std::invalid_argument("estimate_pdf: empty sample set");
    if (bins < 2) throw std::invalid_argument("estimate_pdf: need at least 2 bins");

    double lo = samples[0], hi = samples[0];
    for (double v : samples) {
        if (!std::isfinite(v)) throw std::invalid_argument("estimate_pdf: non-finite sample");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo))
        throw std::invalid_argument("estimate_pdf: zero-width support (all samples identical)");

    EmpiricalPdf pdf;
    pdf.sample_count = samples.size();
    pdf.bin_edges.resize(bins + 1);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i)
        pdf.bin_edges[i] = lo + width * static_cast<double>(i);
    pdf.bin_edges[bins] = hi;

    std::vector<std::size_t> counts(bins, 0);
    const double inv_width = static_cast<double>(bins) / (hi - lo);
    for (double v : samples) {
        auto idx = static_cast<std::size_t>((v - lo) * inv_width);
        if (idx >= bins) idx = bins - 1;  // v == hi lands in the last bin
        ++counts[idx];
    }

    pdf.density.resize(bins);
    const double scale = 1.0 / (static_cast<double>(samples.size()) * width);
    for (std::size_t i = 0; i < bins; ++i)
        pdf.density[i] = static_cast<double>(counts[i]) * scale;
    return pdf;
}

double gamma_pdf(const GammaParams& params, double x) {
    if (!params.valid()) throw std::invalid_argument("gamma_pdf: invalid parameters");
    if (!(x >= 0.0)) throw std::invalid_argument("gamma_pdf: requires x >= 0");
    const double d = params.shape;
    const double theta = params.scale;
    if (x == 0.0) {
        if (d > 1.0) return 0.0;
        if (d == 1.0) return 1.0 / theta;
        return std::numeric_limits<double>::infinity();
    }
    return std::exp((d - 1.0) * std::log(x) - x / theta - lgamma_fn(d) - d * std::log(theta));
}

double gamma_cdf(const GammaParams& params, double x) {
    if (!params.valid()) throw std::invalid_argument("gamma_cdf: invalid parameters");
    if (x <= 0.0) return 0.0;
    return regularized_gamma_p(params.shape, x / params.scale);
}

double pdf_mse(const EmpiricalPdf& emp, const GammaParams& params) {
    const std::size_t m = emp.bins();
    if (m == 0) throw std::invalid_argument("pdf_mse: empty histogram");
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = emp.midpoint(i);
        const double diff = emp.density[i] - (x >= 0.0 ? gamma_pdf(params, x) : 0.0);
        acc += diff * diff;
    }
    return acc / static_cast<double>(m);
}

double ks_statistic(std::span<const double> samples, const GammaParams& params) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample set");
    if (!params.valid()) throw std::invalid_argument("ks_statistic: invalid parameters");

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    const double n = static_cast<double>(sorted.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = gamma_cdf(params, sorted[i]);
        const double below = cdf - static_cast<double>(i) / n;
        const double above = static_cast<double>(i + 1) / n - cdf;
        sup = std::max({sup, below, above});
    }
    return sup;
}

}  // namespace rsma

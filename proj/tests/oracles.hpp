// Test-only reference implementations, independent of the library code paths
// they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracles {

/// J0 by direct power series in extended precision; trustworthy to ~1e-11 on
/// [0, 20] (cancellation grows with x, so keep arguments modest).
inline double bessel_j0_series(double x) {
    const long double q = 0.25L * static_cast<long double>(x) * static_cast<long double>(x);
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 400; ++k) {
        term *= -q / (static_cast<long double>(k) * static_cast<long double>(k));
        sum += term;
        if (std::fabs(static_cast<double>(term)) < 1e-22 * std::fabs(static_cast<double>(sum)) &&
            k > 4)
            break;
    }
    return static_cast<double>(sum);
}

/// Exponential integral E1(x) for x > 0: series below 1, Lentz continued
/// fraction above. Gives E[ln(1 + sX)] = e^{1/s} E1(1/s) for X ~ Exp(1).
inline double exp_int_e1(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("exp_int_e1: requires x > 0");
    if (x <= 1.0) {
        const long double euler = 0.57721566490153286L;
        long double sum = -euler - std::log(static_cast<long double>(x));
        long double term = 1.0L;
        for (int k = 1; k < 200; ++k) {
            term *= -static_cast<long double>(x) / k;
            const long double contrib = -term / k;
            sum += contrib;
            if (std::fabs(static_cast<double>(contrib)) < 1e-20) break;
        }
        return static_cast<double>(sum);
    }
    long double b = x + 1.0L;
    long double c = 1e300L;
    long double d = 1.0L / b;
    long double h = d;
    for (int i = 1; i < 200; ++i) {
        const long double a = -static_cast<long double>(i) * i;
        b += 2.0L;
        d = 1.0L / (a * d + b);
        c = b + a / c;
        const long double delta = c * d;
        h *= delta;
        if (std::fabs(static_cast<double>(delta) - 1.0) < 1e-17) break;
    }
    return static_cast<double>(h * std::exp(-static_cast<long double>(x)));
}

inline double mean(std::span<const double> xs) {
    long double acc = 0.0L;
    for (double v : xs) acc += v;
    return static_cast<double>(acc / static_cast<long double>(xs.size()));
}

/// Population variance (divides by n).
inline double variance(std::span<const double> xs) {
    const double m = mean(xs);
    long double acc = 0.0L;
    for (double v : xs) acc += (v - m) * (static_cast<long double>(v) - m);
    return static_cast<double>(acc / static_cast<long double>(xs.size()));
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double two_sample_ks(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double sup = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        sup = std::max(sup, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return sup;
}

}  // namespace oracles

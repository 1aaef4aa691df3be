#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace rsma {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Small dense complex matrix, row-major. Channel matrices H = [h_1 ... h_K]
/// and precoder matrices keep users as columns.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    Complex& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    ComplexVector column(std::size_t j) const {
        ComplexVector out(rows);
        for (std::size_t i = 0; i < rows; ++i) out[i] = data[i * cols + j];
        return out;
    }
};

inline bool all_finite(const ComplexVector& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

inline bool all_finite(const ComplexMatrix& m) {
    for (const auto& z : m.data)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

/// Shape/scale pair of a Gamma surrogate distribution. mean = shape*scale,
/// variance = shape*scale^2.
struct GammaParams {
    double shape = 0.0;  // D
    double scale = 0.0;  // Theta

    double mean() const { return shape * scale; }
    double variance() const { return shape * scale * scale; }
    bool valid() const {
        return std::isfinite(shape) && std::isfinite(scale) && shape > 0.0 && scale > 0.0;
    }
};

}  // namespace rsma

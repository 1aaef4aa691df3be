#include "rsma/randgen.hpp"

#include <cmath>
#include <stdexcept>

namespace rsma {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t x = seed ^ (0xD1B54A32D192ED03ULL + stream_id * 0x9E3779B97F4A7C15ULL);
    state_[0] = splitmix64(x);
    state_[1] = splitmix64(x);
    state_[2] = splitmix64(x);
    state_[3] = splitmix64(x);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

ComplexVector complex_gaussian_vector(RngStream& rng, std::size_t n) {
    if (n == 0) throw std::invalid_argument("complex_gaussian_vector: requires n >= 1");
    constexpr double kInvSqrt2 = 0.70710678118654752;
    ComplexVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = rng.normal() * kInvSqrt2;
        const double im = rng.normal() * kInvSqrt2;
        out[i] = Complex(re, im);
    }
    return out;
}

double gamma_variate(RngStream& rng, const GammaParams& params) {
    if (!params.valid())
        throw std::invalid_argument("gamma_variate: requires shape > 0 and scale > 0");

    double shape = params.shape;
    double boost = 1.0;
    if (shape < 1.0) {
        boost = std::pow(rng.uniform_pos(), 1.0 / shape);
        shape += 1.0;
    }

    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_pos();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return boost * d * v * params.scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return boost * d * v * params.scale;
    }
}

ComplexVector isotropic_unit_vector(RngStream& rng, std::size_t n) {
    if (n == 0) throw std::invalid_argument("isotropic_unit_vector: requires n >= 1");
    for (;;) {
        ComplexVector v = complex_gaussian_vector(rng, n);
        double norm_sq = 0.0;
        for (const auto& z : v) norm_sq += std::norm(z);
        if (norm_sq > 0.0) {
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (auto& z : v) z *= inv;
            return v;
        }
    }
}

}  // namespace rsma

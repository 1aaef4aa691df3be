#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rsma/metrics.hpp"
#include "rsma/randgen.hpp"

using namespace rsma;

TEST_SUITE_BEGIN("metrics");

TEST_CASE("estimate_pdf: flat density and normalization") {
    RngStream rng(1001);
    std::vector<double> samples(100000);
    for (auto& v : samples) v = rng.uniform();

    const EmpiricalPdf pdf = estimate_pdf(samples, 10);
    REQUIRE(pdf.bins() == 10);
    for (std::size_t i = 0; i < pdf.bins(); ++i)
        CHECK(pdf.density[i] == doctest::Approx(1.0).epsilon(0.05));

    long double integral = 0.0L;
    for (std::size_t i = 0; i < pdf.bins(); ++i) integral += pdf.density[i] * pdf.bin_width(i);
    CHECK(std::fabs(static_cast<double>(integral) - 1.0) < 1e-9);

    for (std::size_t i = 0; i + 1 < pdf.bin_edges.size(); ++i)
        CHECK(pdf.bin_edges[i] < pdf.bin_edges[i + 1]);
}

TEST_CASE("estimate_pdf: exponential shape") {
    RngStream rng(1002);
    std::vector<double> samples(1000000);
    for (auto& v : samples) v = gamma_variate(rng, GammaParams{1.0, 1.0});

    const EmpiricalPdf pdf = estimate_pdf(samples, 200);
    CHECK(pdf.density[0] == doctest::Approx(std::exp(-pdf.midpoint(0))).epsilon(0.05));
    // Spot-check the decay a few widths in.
    for (std::size_t i : {std::size_t(20), std::size_t(50)})
        CHECK(pdf.density[i] == doctest::Approx(std::exp(-pdf.midpoint(i))).epsilon(0.1));

    long double integral = 0.0L;
    for (std::size_t i = 0; i < pdf.bins(); ++i) integral += pdf.density[i] * pdf.bin_width(i);
    CHECK(std::fabs(static_cast<double>(integral) - 1.0) < 1e-9);
}

TEST_CASE("estimate_pdf error paths") {
    CHECK_THROWS_AS(estimate_pdf(std::vector<double>{}, 10), std::invalid_argument);
    CHECK_THROWS_AS(estimate_pdf(std::vector<double>{1.0, 2.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_pdf(std::vector<double>{3.0, 3.0, 3.0}, 10), std::invalid_argument);
    CHECK_THROWS_AS(estimate_pdf(std::vector<double>{1.0, std::nan("")}, 4),
                    std::invalid_argument);
}

TEST_CASE("gamma_pdf values") {
    CHECK(gamma_pdf(GammaParams{1.0, 1.0}, 0.0) == 1.0);
    CHECK(gamma_pdf(GammaParams{1.0, 1.0}, 1.0) == doctest::Approx(0.36788).epsilon(1e-4));
    CHECK(gamma_pdf(GammaParams{2.0, 1.0}, 0.0) == 0.0);
    CHECK(std::isinf(gamma_pdf(GammaParams{0.5, 1.0}, 0.0)));
    // Density integrates moments correctly via a quick Riemann check.
    double acc = 0.0;
    const GammaParams p{2.5, 0.7};
    for (int i = 0; i < 40000; ++i) acc += gamma_pdf(p, (i + 0.5) * 1e-3) * 1e-3;
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS_AS(gamma_pdf(GammaParams{1.0, 1.0}, -0.5), std::invalid_argument);
}

TEST_CASE("pdf_mse: self-fit floor and exact-zero residual") {
    RngStream rng(1003);
    const GammaParams p{2.0, 1.5};
    std::vector<double> samples(10000000);
    for (auto& v : samples) v = gamma_variate(rng, p);
    const EmpiricalPdf emp = estimate_pdf(samples, 200);
    CHECK(pdf_mse(emp, p) < 1e-5);

    // Identical analytic densities evaluated at the same points -> 0.
    EmpiricalPdf analytic;
    analytic.bin_edges.resize(201);
    for (int i = 0; i <= 200; ++i) analytic.bin_edges[i] = 0.05 * i;
    analytic.density.resize(200);
    analytic.sample_count = 1;
    for (std::size_t i = 0; i < 200; ++i) analytic.density[i] = gamma_pdf(p, analytic.midpoint(i));
    CHECK(pdf_mse(analytic, p) == 0.0);
}

TEST_CASE("pdf_mse symmetric between two analytic densities") {
    const GammaParams a{3.0, 0.8};
    const GammaParams b{5.0, 0.4};
    EmpiricalPdf from_a, from_b;
    from_a.bin_edges.resize(151);
    for (int i = 0; i <= 150; ++i) from_a.bin_edges[i] = 0.08 * i;
    from_b.bin_edges = from_a.bin_edges;
    from_a.density.resize(150);
    from_b.density.resize(150);
    from_a.sample_count = from_b.sample_count = 1;
    for (std::size_t i = 0; i < 150; ++i) {
        from_a.density[i] = gamma_pdf(a, from_a.midpoint(i));
        from_b.density[i] = gamma_pdf(b, from_b.midpoint(i));
    }
    CHECK(pdf_mse(from_a, b) == pdf_mse(from_b, a));
}

TEST_CASE("ks_statistic: self-test, disjoint support, and errors") {
    RngStream rng(1004);
    const GammaParams p{3.0, 0.75};
    std::vector<double> samples(1000000);
    for (auto& v : samples) v = gamma_variate(rng, p);
    CHECK(ks_statistic(samples, p) < 0.003);

    // Samples far above any plausible quantile: sup distance close to 1.
    const std::vector<double> far{100.0, 101.0, 102.0};
    CHECK(ks_statistic(far, GammaParams{1.0, 1.0}) > 0.99);

    CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, p), std::invalid_argument);
}

TEST_CASE("gamma_cdf agrees with simple closed forms") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        CHECK(gamma_cdf(GammaParams{1.0, 1.0}, x) ==
              doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
        CHECK(gamma_cdf(GammaParams{1.0, 2.0}, x) ==
              doctest::Approx(1.0 - std::exp(-x / 2.0)).epsilon(1e-12));
    }
    CHECK(gamma_cdf(GammaParams{3.0, 1.0}, 0.0) == 0.0);
    CHECK(gamma_cdf(GammaParams{3.0, 1.0}, -1.0) == 0.0);
}

TEST_SUITE_END();

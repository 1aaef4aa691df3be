#include "rsma/gamma_approx.hpp"

#include <cmath>

namespace rsma {

namespace {

void check_args(std::size_t n_tx, std::size_t n_users, double epsilon) {
    if (n_users < 1 || n_tx <= n_users)
        throw std::invalid_argument("gamma_approx: requires N_t > K >= 1");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("gamma_approx: requires epsilon in [0, 1]");
}

double mean_x(std::size_t n_tx, std::size_t n_users, double eps2) {
    const double k = static_cast<double>(n_users);
    const double phi = static_cast<double>(n_tx - n_users + 1);
    return k * (1.0 - eps2) + phi * eps2;
}

}  // namespace

double mu_correction(std::size_t n_tx, std::size_t n_users, double epsilon) {
    check_args(n_tx, n_users, epsilon);
    const double eps2 = epsilon * epsilon;
    return 2.0 * eps2 * (1.0 - eps2) * static_cast<double>(n_tx - n_users + 1);
}

GammaParams lemma1_params(std::size_t n_tx, std::size_t n_users, double epsilon) {
    check_args(n_tx, n_users, epsilon);
    const double eps2 = epsilon * epsilon;
    const double k = static_cast<double>(n_users);
    const double mean = mean_x(n_tx, n_users, eps2);
    const double var = eps2 * eps2 * static_cast<double>(n_tx + 1) + (1.0 - 2.0 * eps2) * k +
                       mu_correction(n_tx, n_users, epsilon);
    return GammaParams{mean * mean / var, var / mean};
}

GammaParams baseline_params(std::size_t n_tx, std::size_t n_users, double epsilon) {
    check_args(n_tx, n_users, epsilon);
    const double eps2 = epsilon * epsilon;
    const double k = static_cast<double>(n_users);
    const double mean = mean_x(n_tx, n_users, eps2);
    const double var = eps2 * eps2 * static_cast<double>(n_tx + 1) + (1.0 - 2.0 * eps2) * k;
    if (!(var > 0.0))
        throw std::domain_error("baseline_params: nonpositive variance in this regime");
    return GammaParams{mean * mean / var, var / mean};
}

GammaParams z_params(std::size_t n_users, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("z_params: requires epsilon in [0, 1]");
    const double scale = 1.0 - epsilon * epsilon;
    if (n_users < 2 || scale < 1e-12) throw DegenerateZError();
    return GammaParams{static_cast<double>(n_users - 1), scale};
}

MomentReport moment_report(std::size_t n_tx, std::size_t n_users, double epsilon) {
    check_args(n_tx, n_users, epsilon);
    const double eps2 = epsilon * epsilon;
    const double one_m = 1.0 - eps2;
    const double k = static_cast<double>(n_users);
    const double phi = static_cast<double>(n_tx - n_users + 1);

    MomentReport rep;
    rep.phi = phi;
    rep.mu = 2.0 * eps2 * one_m * phi;
    rep.zeta1 = (k + k * k) * one_m * one_m;
    rep.zeta2 = (phi + phi * phi) * eps2 * eps2;
    rep.zeta3 = 2.0 * one_m * eps2 * k * phi;
    rep.zeta4 = rep.mu;
    rep.mean = mean_x(n_tx, n_users, eps2);
    rep.variance = rep.zeta1 + rep.zeta2 + rep.zeta3 + rep.zeta4 - rep.mean * rep.mean;
    return rep;
}

}  // namespace rsma

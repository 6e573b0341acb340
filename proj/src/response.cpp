#include "cqnc/response.hpp"

#include <cmath>

namespace cqnc {

namespace {
const Complex i_unit{0.0, 1.0};
}

Complex chi_a(double omega, const SystemParams& p) {
    return 1.0 / (p.kappa / 2.0 + i_unit * omega);
}

Complex chi_m(double omega, const SystemParams& p) {
    return p.omega_m /
           ((p.omega_m * p.omega_m - omega * omega) + i_unit * omega * p.gamma_m);
}

Complex chi_d(double omega, const SystemParams& p) {
    const double g2 = p.big_gamma * p.big_gamma / 4.0;
    return -p.omega_m / ((p.omega_m * p.omega_m - omega * omega + g2) +
                         i_unit * omega * p.big_gamma);
}

Complex chi_a_prime(double omega, const SystemParams& p, ResponseOptions opt) {
    const Complex ca = opt.approx_chi_a ? Complex{2.0 / p.kappa, 0.0}
                                        : chi_a(omega, p);
    Complex core;
    if (opt.perfect_cqnc) {
        // g^2 chi_m + G^2 chi_d vanishes identically under perfect matching.
        core = -p.delta_c;
    } else {
        core = p.g * p.g * chi_m(omega, p) +
               p.big_g * p.big_g * chi_d(omega, p) - p.delta_c;
    }
    return 1.0 / (1.0 / ca - ca * p.delta_c * core);
}

SusceptibilityBundle bundle(double omega, const SystemParams& p,
                            ResponseOptions opt) {
    SusceptibilityBundle b;
    b.omega = omega;
    b.chi_a = opt.approx_chi_a ? Complex{2.0 / p.kappa, 0.0} : chi_a(omega, p);
    b.chi_m = chi_m(omega, p);
    b.chi_d = opt.perfect_cqnc ? -b.chi_m : chi_d(omega, p);
    b.chi_ap = chi_a_prime(omega, p, opt);
    b.z = b.chi_a * (1.0 - 1.0 / (p.kappa * chi_a_prime(-omega, p, opt)));
    b.r = b.chi_d / b.chi_m;
    const double ratio = opt.perfect_cqnc
                             ? 1.0
                             : (p.big_g / p.g) *
                                   std::sqrt(p.big_gamma / p.gamma_m);
    b.a = ratio * b.r;
    return b;
}

double approximation_error(double omega, double kappa) {
    const double x = omega / kappa;
    return std::sqrt(1.0 + 4.0 * x * x) - 1.0;
}

}  // namespace cqnc

#include "cqnc/spectra.hpp"

#include <cmath>

#include "cqnc/constants.hpp"

namespace cqnc {

namespace {
const Complex i_unit{0.0, 1.0};

double re(Complex a) { return a.real(); }
double dot(Complex a, Complex b) { return re(a * std::conj(b)); }
}  // namespace

double thermal_floor(const SystemParams& p, ThermalModel thermal) {
    if (thermal == ThermalModel::high_temperature)
        return constants::k_boltzmann * p.temperature /
               (constants::hbar * p.omega_m);
    return p.n_bar_m + 0.5;
}

double u_theta(double theta, double y) {
    return std::cos(theta) - 2.0 * y * std::sin(theta);
}

double lo_factor(double theta, double y) {
    const double u = u_theta(theta, y);
    if (std::abs(u) < 1e-12)
        throw ValidityError("homodyne angle theta=" + std::to_string(theta) +
                            " is singular: measured quadrature carries no "
                            "signal (u_theta = 0)");
    return std::sin(theta) / u;
}

NoiseWeights force_noise_weights(double omega, const SystemParams& p,
                                 SpectrumMode mode, bool approx_chi_a) {
    ResponseOptions ropt{approx_chi_a,
                         mode == SpectrumMode::perfect_enforced};
    const SusceptibilityBundle b = bundle(omega, p, ropt);
    const double k = p.kappa, g = p.g, gm = p.gamma_m;
    const double big_g = ropt.perfect_cqnc ? p.g : p.big_g;
    const double big_gamma = ropt.perfect_cqnc ? p.gamma_m : p.big_gamma;

    NoiseWeights w;
    const double rk = std::sqrt(k / gm);
    w.shot_p = -rk / (g * b.chi_m) * (1.0 - 1.0 / (k * b.chi_ap));
    w.shot_x = rk / (g * b.chi_m) * b.chi_a * p.delta_c;
    if (ropt.perfect_cqnc) {
        w.back_x = {0.0, 0.0};
    } else {
        w.back_x = -rk *
                   (g * g * b.chi_m + big_g * big_g * b.chi_d) /
                   (g * b.chi_m) * b.chi_a;
    }
    const Complex hom_pre = 1.0 / (g * std::sqrt(k * gm) * b.chi_ap * b.chi_m);
    w.hom_p = hom_pre * b.chi_a * p.delta_c;
    w.hom_x = hom_pre * (k * b.chi_a - 1.0);
    const Complex at_pre =
        std::sqrt(big_gamma / gm) * big_g * b.chi_d / (g * b.chi_m);
    w.at_p = at_pre;
    w.at_x = -at_pre * (big_gamma / 2.0 + i_unit * omega) / p.omega_m;
    return w;
}

SpectrumBreakdown breakdown(double omega, const SystemParams& p,
                            const SqueezingState& sq, double theta,
                            SpectrumMode mode, SpectraOptions opt) {
    const NoiseWeights w = force_noise_weights(omega, p, mode, opt.approx_chi_a);
    const double lo = lo_factor(theta, p.y);
    const double sx = sq.n() + 0.5 + sq.m().real();
    const double sp = sq.n() + 0.5 - sq.m().real();
    const double im = sq.m().imag();

    SpectrumBreakdown out;
    out.omega = omega;
    out.theta = theta;
    out.mode = mode;
    out.s_th = thermal_floor(p, opt.thermal);
    out.s_f = std::norm(w.shot_x) * sx + std::norm(w.shot_p) * sp +
              2.0 * im * dot(w.shot_x, w.shot_p);
    out.s_at = 0.5 * (std::norm(w.at_x) + std::norm(w.at_p));
    out.s_b = std::norm(w.back_x) * sx;
    out.s_h = lo * lo *
              (std::norm(w.hom_x) * sx + std::norm(w.hom_p) * sp +
               2.0 * im * dot(w.hom_x, w.hom_p));
    out.s_fb = 2.0 * dot(w.shot_x, w.back_x) * sx +
               2.0 * im * dot(w.back_x, w.shot_p);
    out.s_fh = lo * (2.0 * dot(w.shot_x, w.hom_x) * sx +
                     2.0 * dot(w.shot_p, w.hom_p) * sp +
                     2.0 * im * (dot(w.shot_x, w.hom_p) +
                                 dot(w.hom_x, w.shot_p)));
    out.s_bh = lo * (2.0 * dot(w.back_x, w.hom_x) * sx +
                     2.0 * im * dot(w.back_x, w.hom_p));
    out.total = out.s_th + out.s_f + out.s_at + out.s_b + out.s_h + out.s_fb +
                out.s_fh + out.s_bh;
    return out;
}

ThetaQuadratic theta_quadratic(double omega, const SystemParams& p,
                               const SqueezingState& sq, SpectrumMode mode,
                               SpectraOptions opt) {
    const NoiseWeights w = force_noise_weights(omega, p, mode, opt.approx_chi_a);
    const double sx = sq.n() + 0.5 + sq.m().real();
    const double sp = sq.n() + 0.5 - sq.m().real();
    const double im = sq.m().imag();

    ThetaQuadratic q;
    q.c0 = thermal_floor(p, opt.thermal) +
           std::norm(w.shot_x) * sx + std::norm(w.shot_p) * sp +
           2.0 * im * dot(w.shot_x, w.shot_p) +
           0.5 * (std::norm(w.at_x) + std::norm(w.at_p)) +
           std::norm(w.back_x) * sx +
           2.0 * dot(w.shot_x, w.back_x) * sx +
           2.0 * im * dot(w.back_x, w.shot_p);
    q.c1 = 2.0 * dot(w.shot_x, w.hom_x) * sx +
           2.0 * dot(w.shot_p, w.hom_p) * sp +
           2.0 * im * (dot(w.shot_x, w.hom_p) + dot(w.hom_x, w.shot_p)) +
           2.0 * dot(w.back_x, w.hom_x) * sx +
           2.0 * im * dot(w.back_x, w.hom_p);
    q.c2 = std::norm(w.hom_x) * sx + std::norm(w.hom_p) * sp +
           2.0 * im * dot(w.hom_x, w.hom_p);
    return q;
}

double sigma_shot(double n, Complex m, double y) {
    const double mp = mu_plus(y), mm = mu_minus(y);
    return mp * mp * n + (8.0 * y * y - mp * mp) * m.real() -
           4.0 * y * mm * m.imag();
}

double k_coeff(double n, Complex m, double y) {
    const double mp = mu_plus(y), mm = mu_minus(y);
    return 4.0 * y * mp * mp * (n + 0.5) +
           4.0 * y * mp * (mm + 1.0) * m.real() -
           2.0 * mp * (mm - 4.0 * y * y) * m.imag();
}

double l_coeff(double n, Complex m, double y) {
    const double mp = mu_plus(y), mm = mu_minus(y);
    return 2.0 * mp * mp * mp * (n + 0.5) + 2.0 * mm * mp * mp * m.real() +
           4.0 * y * mp * mp * m.imag();
}

double perfect_cqnc_spectrum(double omega, const SystemParams& p,
                             const SqueezingState& sq, double theta,
                             ThermalModel thermal) {
    const double lo = lo_factor(theta, p.y);
    const double acm2 = std::norm(chi_m(omega, p));
    const double pre = p.kappa / (p.g * p.g * p.gamma_m * acm2);
    const double atomic =
        0.5 * (1.0 + (omega * omega + p.gamma_m * p.gamma_m / 4.0) /
                         (p.omega_m * p.omega_m));
    const double mp = mu_plus(p.y);
    const double bracket = 0.5 * mp * mp + sigma_shot(sq.n(), sq.m(), p.y) +
                           l_coeff(sq.n(), sq.m(), p.y) * lo * lo +
                           k_coeff(sq.n(), sq.m(), p.y) * lo;
    return thermal_floor(p, thermal) + atomic + pre * bracket;
}

double sql(double omega, const SystemParams& p) {
    return 1.0 / (p.gamma_m * std::abs(chi_m(omega, p)));
}

double to_si(double s_dimensionless, const SystemParams& p) {
    if (s_dimensionless < 0)
        throw ValidityError("negative spectral density cannot be converted");
    return s_dimensionless * constants::hbar * p.mass * p.omega_m * p.gamma_m;
}

}  // namespace cqnc

#include "cqnc/params.hpp"

#include <cmath>

#include "cqnc/constants.hpp"

namespace cqnc {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}
}  // namespace

void RawConfig::validate() const {
    require(omega_m_hz > 0, "omega_m_hz must be positive");
    require(gamma_m_hz > 0, "gamma_m_hz must be positive");
    require(kappa_hz > 0, "kappa_hz must be positive");
    require(g0_hz > 0, "g0_hz must be positive");
    require(lambda_nm > 0, "lambda_nm must be positive");
    require(power_uw >= 0, "power_uw must be non-negative");
    require(mass_kg > 0, "mass_kg must be positive");
    require(temperature_k >= 0, "temperature_k must be non-negative");
    require(coupling_ratio > 0, "coupling_ratio must be positive");
    require(decay_ratio > 0, "decay_ratio must be positive");
}

SystemParams derive(const RawConfig& config) {
    config.validate();
    SystemParams p;
    p.omega_m = two_pi * config.omega_m_hz;
    p.gamma_m = two_pi * config.gamma_m_hz;
    p.kappa = two_pi * config.kappa_hz;
    p.g0 = two_pi * config.g0_hz;
    p.mass = config.mass_kg;
    p.temperature = config.temperature_k;
    p.y = config.y;
    p.delta_c = config.y * p.kappa;

    p.q_m = p.omega_m / p.gamma_m;
    if (p.q_m <= 1e3)
        throw ConfigError("mechanical quality factor below 1e3: weak-damping "
                          "treatment of the Brownian noise does not apply");

    p.omega_laser = two_pi * constants::c_light / (config.lambda_nm * 1e-9);
    const double power = config.power_uw * 1e-6;
    p.pump_rate = std::sqrt(power * p.kappa / (constants::hbar * p.omega_laser));
    // Resonant steady state of the intracavity amplitude.
    p.alpha_s = 2.0 * p.pump_rate / p.kappa;
    p.g = 2.0 * p.g0 * p.alpha_s;
    p.big_g = config.coupling_ratio * p.g;
    p.big_gamma = config.decay_ratio * p.gamma_m;

    if (config.temperature_k == 0.0) {
        p.n_bar_m = 0.0;
    } else {
        const double x = constants::hbar * p.omega_m /
                         (constants::k_boltzmann * config.temperature_k);
        p.n_bar_m = 1.0 / std::expm1(x);
    }
    p.force_scale =
        std::sqrt(constants::hbar * p.mass * p.omega_m * p.gamma_m);
    return p;
}

SqueezingState::SqueezingState(double n, std::complex<double> m,
                               bool allow_large)
    : n_(n), m_(m) {
    if (n < 0) throw ConfigError("squeezing N must be non-negative");
    if (!allow_large && n > n_max)
        throw ConfigError("squeezing N exceeds the experimental ceiling of 25 "
                          "(pass the override to allow)");
    const double bound = std::sqrt(n * (n + 1.0));
    if (std::abs(m) > bound * (1.0 + 1e-12) + 1e-15)
        throw ConfigError("unphysical squeezing: |M| exceeds sqrt(N(N+1))");
}

SqueezingState SqueezingState::pure(double n, double phi, bool allow_large) {
    const double mag = std::sqrt(n * (n + 1.0));
    return {n, std::polar(mag, phi), allow_large};
}

SqueezingState SqueezingState::from_opo(std::complex<double> eps,
                                        double gamma_opo) {
    if (gamma_opo <= 0) throw ConfigError("OPO decay rate must be positive");
    const double ae = std::abs(eps);
    if (ae >= gamma_opo / 2.0)
        throw ConfigError("OPO at or above threshold: |eps| >= gamma/2");
    const double bx = gamma_opo / 2.0 - ae;
    const double by = gamma_opo / 2.0 + ae;
    const double sum_inv = 1.0 / (bx * bx) + 1.0 / (by * by);
    const double dif_inv = 1.0 / (bx * bx) - 1.0 / (by * by);
    const std::complex<double> m = eps * gamma_opo / 2.0 * sum_inv;
    const double n = ae * gamma_opo / 2.0 * dif_inv;
    return {n, m, /*allow_large=*/true};  // N diverges toward threshold
}

SqueezingState SqueezingState::from_level(double level_db) {
    if (level_db > 0)
        throw ConfigError("squeezing level must be quoted as <= 0 dB");
    const double v_minus = std::pow(10.0, level_db / 10.0);
    const double d = 1.0 / std::sqrt(v_minus) - std::sqrt(v_minus);
    const double n = 0.25 * d * d;
    return pure(n, 0.0, /*allow_large=*/true);
}

namespace {
// Shot-noise functional minimized by the squeezing phase at theta = 0.
double sigma_of_phi(double y, double n, double phi) {
    const double mp = mu_plus(y), mm = mu_minus(y);
    const double mag = std::sqrt(n * (n + 1.0));
    return mp * mp * n + (8.0 * y * y - mp * mp) * mag * std::cos(phi) -
           4.0 * y * mm * mag * std::sin(phi);
}
}  // namespace

double phi_opt(double y, double squeezing_n) {
    const double mp = mu_plus(y), mm = mu_minus(y);
    const double den = mp * mp - 8.0 * y * y;
    const double n = squeezing_n > 0 ? squeezing_n : 1.0;
    double base;
    if (den == 0.0) {
        base = 1.5707963267948966;  // tan singular: candidates +-pi/2
    } else {
        base = std::atan(4.0 * y * mm / den);
    }
    const double alt = base > 0 ? base - 3.141592653589793 : base + 3.141592653589793;
    const double cand =
        sigma_of_phi(y, n, base) <= sigma_of_phi(y, n, alt) ? base : alt;
    return std::atan2(std::sin(cand), std::cos(cand));
}

double phi_opt_paper(double y) {
    const double mp = mu_plus(y), mm = mu_minus(y);
    const double den = mp * mp - 8.0 * y * y;
    if (den == 0.0)
        throw ValidityError("phi_opt_paper singular at mu_+^2 = 8 y^2");
    const double phi = 4.0 * y * mm / den;
    return std::atan2(std::sin(phi), std::cos(phi));
}

}  // namespace cqnc

#include "cqnc/optimize.hpp"

#include <cmath>

#include "cqnc/response.hpp"

namespace cqnc {

namespace {

constexpr double pi = 3.141592653589793;
constexpr double half_pi = 1.5707963267948966;

double normalize_half(double theta) {
    double t = std::fmod(theta, pi);
    if (t > half_pi) t -= pi;
    if (t <= -half_pi) t += pi;
    return t;
}

double advantage_db_of(double s_min, double s_theta0) {
    if (s_min <= 0 || s_theta0 <= 0) return 0.0;
    return -10.0 * std::log10(s_min / s_theta0);
}

}  // namespace

OptimizationResult theta_opt_perfect(double y, const SqueezingState& sq) {
    const double k = k_coeff(sq.n(), sq.m(), y);
    const double l = l_coeff(sq.n(), sq.m(), y);
    OptimizationResult r;
    r.valid = l > 0;
    if (!r.valid) {
        r.theta_opt = 0.0;
        return r;
    }
    const double ratio = k / l;
    const double den = 1.0 - y * ratio;
    if (den == 0.0) {
        r.theta_opt = half_pi;
    } else {
        r.theta_opt = normalize_half(std::atan(-(ratio / 2.0) / den));
    }
    return r;
}

double s_min_perfect(double omega, const SystemParams& p,
                     const SqueezingState& sq, ThermalModel thermal) {
    const double k = k_coeff(sq.n(), sq.m(), p.y);
    const double l = l_coeff(sq.n(), sq.m(), p.y);
    if (l <= 0)
        throw ValidityError("closed-form minimum invalid: L <= 0");
    const double acm2 = std::norm(chi_m(omega, p));
    const double pre = p.kappa / (p.g * p.g * p.gamma_m * acm2);
    const double atomic =
        0.5 * (1.0 + (omega * omega + p.gamma_m * p.gamma_m / 4.0) /
                         (p.omega_m * p.omega_m));
    const double mp = mu_plus(p.y);
    const double bracket = 0.5 * mp * mp + sigma_shot(sq.n(), sq.m(), p.y) -
                           k * k / (4.0 * l);
    return thermal_floor(p, thermal) + atomic + pre * bracket;
}

OptimizationResult theta_opt_resonant_imperfect(double omega,
                                                const SystemParams& p,
                                                const SqueezingState& sq,
                                                ThermalModel thermal) {
    if (p.delta_c != 0.0)
        throw ValidityError("resonant-case optimizer requires delta_c = 0");
    if (std::abs(sq.m().imag()) > 1e-9 * (1.0 + std::abs(sq.m())))
        throw ValidityError("resonant-case optimizer requires real squeezing "
                            "phase (phi = 0)");

    const Complex cm = chi_m(omega, p);
    const Complex w = 1.0 + (p.big_g * p.big_g) / (p.g * p.g) *
                                chi_d(omega, p) / cm;
    const double acm2 = std::norm(cm);
    const double cb = 4.0 * p.g * p.g / (p.kappa * p.gamma_m);
    const double re_proj = (w / cm).real();

    OptimizationResult r;
    r.theta_opt = normalize_half(std::atan(
        4.0 * p.g * p.g / p.kappa * acm2 * re_proj));

    r.s_theta0 = breakdown(omega, p, sq, 0.0, SpectrumMode::general,
                           {true, thermal})
                     .total;
    const double cap_p = sq.n() + 0.5 + sq.m().real();
    const double re2 = re_proj * re_proj * acm2;
    const double aw2 = std::norm(w);
    // Optimized spectrum: the correlated part of the residual backaction is
    // removed and the threshold subtraction scales inversely with the
    // antisqueezed quadrature.
    r.s_min = r.s_theta0 - cb * (aw2 - re2) * cap_p - cb * aw2 / cap_p;
    r.valid = r.s_min >= 0;
    r.advantage_db = r.valid ? advantage_db_of(r.s_min, r.s_theta0) : 0.0;
    return r;
}

double resonant_threshold_spectrum(double omega, const SystemParams& p,
                                   double n, ThermalModel thermal) {
    const SqueezingState sq = SqueezingState::pure(n, 0.0, true);
    SystemParams pr = p;
    pr.delta_c = 0.0;
    pr.y = 0.0;
    return theta_opt_resonant_imperfect(omega, pr, sq, thermal).s_min;
}

GeneralCoefficients kprime_lprime(double omega, const SystemParams& p,
                                  const SqueezingState& sq, SpectrumMode mode,
                                  SpectraOptions opt) {
    const ThetaQuadratic q = theta_quadratic(omega, p, sq, mode, opt);
    return {q.c1, q.c2, q.c0};
}

OptimizationResult theta_opt_general(double omega, const SystemParams& p,
                                     const SqueezingState& sq,
                                     SpectrumMode mode, SpectraOptions opt) {
    const GeneralCoefficients c = kprime_lprime(omega, p, sq, mode, opt);
    OptimizationResult r;
    r.s_theta0 = c.s_theta0;
    r.valid = c.l_prime > 0;
    if (!r.valid) {
        r.theta_opt = 0.0;
        r.s_min = r.s_theta0;
        r.advantage_db = 0.0;
        return r;
    }
    const double ratio = c.k_prime / c.l_prime;
    const double den = 1.0 - p.y * ratio;
    r.theta_opt = den == 0.0
                      ? half_pi
                      : normalize_half(std::atan(-(ratio / 2.0) / den));
    r.s_min = c.s_theta0 - c.k_prime * c.k_prime / (4.0 * c.l_prime);
    r.advantage_db = advantage_db_of(r.s_min, r.s_theta0);
    return r;
}

double theta_opt_numeric(double omega, const SystemParams& p,
                         const SqueezingState& sq, SpectrumMode mode,
                         SpectraOptions opt) {
    auto value = [&](double theta) {
        return breakdown(omega, p, sq, theta, mode, opt).total;
    };
    constexpr int grid_points = 2000;
    double best_theta = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_points; ++i) {
        const double t =
            -half_pi + (i + 0.5) * (pi / grid_points);
        double v;
        try {
            v = value(t);
        } catch (const ValidityError&) {
            continue;  // singular u_theta
        }
        if (v < best) {
            best = v;
            best_theta = t;
        }
    }
    // golden-section refinement around the grid minimum
    const double gr = 0.6180339887498949;
    double a = best_theta - pi / grid_points;
    double b = best_theta + pi / grid_points;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    auto safe = [&](double t) {
        try {
            return value(t);
        } catch (const ValidityError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    double f1 = safe(x1), f2 = safe(x2);
    while (b - a > 1e-9) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = safe(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = safe(x2);
        }
    }
    return normalize_half(0.5 * (a + b));
}

NminResult n_min(double omega, const SystemParams& p, double n_cap,
                 ThermalModel thermal) {
    auto f = [&](double n) {
        return resonant_threshold_spectrum(omega, p, n, thermal);
    };
    NminResult r;
    double lo = 0.0, hi = n_cap;
    double flo = f(lo), fhi = f(hi);
    if (flo > 0 || fhi < 0) {
        r.n_min = 0.0;
        r.threshold_found = false;
        return r;
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    r.n_min = 0.5 * (lo + hi);
    r.threshold_found = true;
    return r;
}

}  // namespace cqnc

#include "cqnc/oracle.hpp"

#include <cmath>
#include <random>

#include "cqnc/constants.hpp"
#include "cqnc/response.hpp"

namespace cqnc {

namespace {
const Complex i_unit{0.0, 1.0};
}

LinearSystem build_system(const SystemParams& p) {
    LinearSystem s;
    Matrix6d& a = s.drift;
    a(0, 0) = -p.kappa / 2.0;
    a(0, 1) = p.delta_c;
    a(1, 0) = -p.delta_c;
    a(1, 1) = -p.kappa / 2.0;
    a(1, 2) = -p.g;
    a(1, 4) = -p.big_g;
    a(2, 3) = p.omega_m;
    a(3, 2) = -p.omega_m;
    a(3, 3) = -p.gamma_m;
    a(3, 0) = -p.g;
    a(4, 4) = -p.big_gamma / 2.0;
    a(4, 5) = -p.omega_m;
    a(5, 4) = p.omega_m;
    a(5, 5) = -p.big_gamma / 2.0;
    a(5, 0) = -p.big_g;

    Matrix6d& n = s.input_map;
    n(0, 0) = std::sqrt(p.kappa);
    n(1, 1) = std::sqrt(p.kappa);
    n(3, 2) = std::sqrt(p.gamma_m);
    n(3, 3) = std::sqrt(p.gamma_m);
    n(4, 4) = std::sqrt(p.big_gamma);
    n(5, 5) = std::sqrt(p.big_gamma);
    return s;
}

namespace {

OutputWeights solve_exact(double omega, const SystemParams& p) {
    const LinearSystem sys = build_system(p);
    Matrix6c m = (i_unit * omega * Matrix6d::Identity() - sys.drift)
                     .cast<std::complex<double>>();
    Eigen::PartialPivLU<Matrix6c> lu(m);
    const Matrix6c sol = lu.solve(sys.input_map.cast<std::complex<double>>());
    const Matrix6c residual = m * sol - sys.input_map.cast<std::complex<double>>();
    if (residual.norm() > 1e-8 * sys.input_map.norm())
        throw ValidityError("oracle linear system near-singular at omega=" +
                            std::to_string(omega) + " (residual " +
                            std::to_string(residual.norm()) + ")");
    OutputWeights w;
    w.x_out = std::sqrt(p.kappa) * sol.row(0).transpose();
    w.p_out = std::sqrt(p.kappa) * sol.row(1).transpose();
    w.x_out(0) -= 1.0;  // input-output: a_out = sqrt(kappa) a - a_in
    w.p_out(1) -= 1.0;
    return w;
}

// Same physics assembled by susceptibility elimination, with the cavity
// response replaced by its flat low-frequency value.
OutputWeights solve_flat_cavity(double omega, const SystemParams& p) {
    const double k = p.kappa, g = p.g, gg = p.big_g;
    const Complex ca{2.0 / k, 0.0};
    const Complex cm = chi_m(omega, p);
    const Complex cd = chi_d(omega, p);
    const Complex core = g * g * cm + gg * gg * cd - p.delta_c;
    const Complex cap = 1.0 / (1.0 / ca - ca * p.delta_c * core);

    // Drive of P_a from mechanics/atoms noise inputs.
    Vector6c s = Vector6c::Zero();
    s(2) = -g * cm * std::sqrt(p.gamma_m);
    s(3) = -g * cm * std::sqrt(p.gamma_m);
    s(5) = -gg * std::sqrt(p.big_gamma) * cd;
    s(4) = gg * std::sqrt(p.big_gamma) * cd *
           (p.big_gamma / 2.0 + i_unit * omega) / p.omega_m;

    Vector6c pa = cap * s;
    pa(0) += cap * ca * core * std::sqrt(k);
    pa(1) += cap * std::sqrt(k);
    Vector6c xa = ca * p.delta_c * pa;
    xa(0) += ca * std::sqrt(k);

    OutputWeights w;
    w.x_out = std::sqrt(k) * xa;
    w.p_out = std::sqrt(k) * pa;
    w.x_out(0) -= 1.0;
    w.p_out(1) -= 1.0;
    return w;
}

}  // namespace

OutputWeights solve_output(double omega, const SystemParams& p,
                           bool approx_chi_a) {
    return approx_chi_a ? solve_flat_cavity(omega, p) : solve_exact(omega, p);
}

Matrix6d input_correlations(const SystemParams& p, const SqueezingState& sq,
                            ThermalModel thermal) {
    Matrix6d c = Matrix6d::Zero();
    c(0, 0) = sq.n() + 0.5 + sq.m().real();
    c(1, 1) = sq.n() + 0.5 - sq.m().real();
    c(0, 1) = c(1, 0) = sq.m().imag();
    c(2, 2) = thermal_floor(p, thermal);
    c(4, 4) = 0.5;
    c(5, 5) = 0.5;
    return c;
}

namespace {

double sandwich(const Vector6c& v, const Matrix6d& c) {
    double s = 0;
    for (int j = 0; j < 6; ++j) {
        if (j == kForceChannel) continue;
        for (int k = 0; k < 6; ++k) {
            if (k == kForceChannel || c(j, k) == 0.0) continue;
            s += c(j, k) * (v(j) * std::conj(v(k))).real();
        }
    }
    return s;
}

}  // namespace

double psd_numeric(double omega, const SystemParams& p,
                   const SqueezingState& sq, double theta, bool approx_chi_a,
                   ThermalModel thermal) {
    const OutputWeights w = solve_output(omega, p, approx_chi_a);
    const Vector6c rot = w.rotated(theta);
    const Complex wf = rot(kForceChannel);
    if (std::abs(wf) == 0.0)
        throw ValidityError("force transfer vanishes at this angle");
    const Vector6c v = rot / wf;
    return sandwich(v, input_correlations(p, sq, thermal));
}

ThetaOptimum theta_opt_pencil(double omega, const SystemParams& p,
                              const SqueezingState& sq, ThermalModel thermal) {
    const OutputWeights w = solve_output(omega, p, false);
    const Matrix6d c = input_correlations(p, sq, thermal);

    // noise quadratic form over (cos, sin): weights = cos*p_out - sin*x_out
    auto cross = [&](const Vector6c& u, const Vector6c& v) {
        double s = 0;
        for (int j = 0; j < 6; ++j) {
            if (j == kForceChannel) continue;
            for (int k = 0; k < 6; ++k) {
                if (k == kForceChannel || c(j, k) == 0.0) continue;
                s += c(j, k) * 0.5 *
                     (u(j) * std::conj(v(k)) + v(j) * std::conj(u(k))).real();
            }
        }
        return s;
    };
    const double n_pp = cross(w.p_out, w.p_out);
    const double n_xx = cross(w.x_out, w.x_out);
    const double n_px = cross(w.p_out, w.x_out);
    // signal quadratic form
    const Complex fp = w.p_out(kForceChannel), fx = w.x_out(kForceChannel);
    const double s_pp = std::norm(fp);
    const double s_xx = std::norm(fx);
    const double s_px = (fp * std::conj(fx)).real();

    // minimize (a1 c^2 - 2 b1 c s + c1 s^2)/(a2 c^2 - 2 b2 c s + c2 s^2)
    const double a1 = n_pp, b1 = n_px, c1 = n_xx;
    const double a2 = s_pp, b2 = s_px, c2 = s_xx;
    // det(M1 - lam M2) = A lam^2 + B lam + C
    const double qa = a2 * c2 - b2 * b2;
    const double qb = -(a1 * c2 + c1 * a2) + 2.0 * b1 * b2;
    const double qc = a1 * c1 - b1 * b1;
    double lam;
    if (std::abs(qa) < 1e-300 * std::max(std::abs(qb), std::abs(qc))) {
        lam = -qc / qb;
    } else {
        const double disc = std::sqrt(std::max(qb * qb - 4.0 * qa * qc, 0.0));
        const double r1 = (-qb - disc) / (2.0 * qa);
        const double r2 = (-qb + disc) / (2.0 * qa);
        lam = std::min(r1, r2);
        if (lam <= 0) lam = std::max(r1, r2);
    }
    // eigenvector of (M1 - lam M2), with M(0,1) = -b
    const double m00 = a1 - lam * a2;
    const double m01 = -(b1 - lam * b2);
    const double m11 = c1 - lam * c2;
    double vc, vs;
    if (std::abs(m00) + std::abs(m01) > std::abs(m01) + std::abs(m11)) {
        vc = -m01;
        vs = m00;
    } else {
        vc = -m11;
        vs = m01;
    }
    double theta = std::atan2(vs, vc);
    if (theta > 1.5707963267948966) theta -= 3.141592653589793;
    if (theta <= -1.5707963267948966) theta += 3.141592653589793;

    ThetaOptimum opt;
    opt.theta = theta;
    const double cth = std::cos(theta), sth = std::sin(theta);
    const double noise =
        a1 * cth * cth - 2.0 * b1 * cth * sth + c1 * sth * sth;
    const double sig = a2 * cth * cth - 2.0 * b2 * cth * sth + c2 * sth * sth;
    opt.s_min = noise / sig;
    return opt;
}

double signal_gain(double omega, const SystemParams& p, double theta) {
    const OutputWeights w = solve_output(omega, p, false);
    return std::norm(w.rotated(theta)(kForceChannel));
}

OracleCheck oracle_check(const SystemParams& base, int draws, unsigned seed,
                         double tol_flagged, double tol_exact) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uy(-1.0, 1.0);
    std::uniform_real_distribution<double> ug(0.9, 1.1);
    std::uniform_real_distribution<double> ugam(0.8, 1.25);
    std::uniform_real_distribution<double> uw(0.9, 1.1);
    std::uniform_real_distribution<double> uth(-0.3, 0.3);
    std::uniform_real_distribution<double> un(0.0, 2.0);
    std::uniform_real_distribution<double> uphi(-3.141592653589793,
                                                3.141592653589793);
    OracleCheck rep;
    rep.draws = draws;
    rep.tol_flagged = tol_flagged;
    rep.tol_exact = tol_exact;
    for (int i = 0; i < draws; ++i) {
        SystemParams p = base;
        p.y = uy(rng);
        p.delta_c = p.y * p.kappa;
        p.big_g = ug(rng) * p.g;
        p.big_gamma = ugam(rng) * p.gamma_m;
        const double omega = uw(rng) * p.omega_m;
        const double theta = uth(rng);
        const SqueezingState sq = SqueezingState::pure(un(rng), uphi(rng));

        const double analytic =
            breakdown(omega, p, sq, theta, SpectrumMode::general,
                      {true, ThermalModel::exact_occupation})
                .total;
        const double flagged = psd_numeric(omega, p, sq, theta, true);
        const double exact = psd_numeric(omega, p, sq, theta, false);
        rep.max_rel_err_flagged = std::max(
            rep.max_rel_err_flagged, std::abs(analytic - flagged) / flagged);
        rep.max_rel_err_exact = std::max(rep.max_rel_err_exact,
                                         std::abs(analytic - exact) / exact);
    }
    rep.pass_flagged = rep.max_rel_err_flagged <= tol_flagged;
    rep.pass_exact = rep.max_rel_err_exact <= tol_exact;
    return rep;
}

}  // namespace cqnc

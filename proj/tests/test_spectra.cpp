#include <doctest.h>

#include <cmath>
#include <random>

#include "cqnc/spectra.hpp"

using namespace cqnc;

namespace {

SystemParams reference(double y = 0.0, double cr = 1.0, double dr = 1.0) {
    RawConfig c;
    c.y = y;
    c.coupling_ratio = cr;
    c.decay_ratio = dr;
    return derive(c);
}

struct Draw {
    SystemParams p;
    SqueezingState sq;
    double omega, theta;
};

Draw random_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uy(-1.2, 1.2), ug(0.9, 1.1),
        ud(0.8, 1.25), uw(0.7, 1.3), uth(-1.4, 1.4), un(0.0, 25.0),
        uphi(-3.141592653589793, 3.141592653589793);
    Draw d;
    d.p = reference(uy(rng), ug(rng), ud(rng));
    d.omega = uw(rng) * d.p.omega_m;
    d.theta = uth(rng);
    d.sq = SqueezingState::pure(un(rng), uphi(rng));
    return d;
}

}  // namespace

TEST_CASE("total equals the component sum") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const Draw d = random_draw(rng);
        if (std::abs(u_theta(d.theta, d.p.y)) < 0.05) continue;
        const SpectrumBreakdown b =
            breakdown(d.omega, d.p, d.sq, d.theta, SpectrumMode::general);
        const double sum = b.s_th + b.s_f + b.s_at + b.s_b + b.s_h + b.s_fb +
                           b.s_fh + b.s_bh;
        CHECK(b.total == doctest::Approx(sum).epsilon(1e-12));
        CHECK(b.s_th >= 0.0);
        CHECK(b.s_at >= 0.0);
        CHECK(b.total >= 0.0);
    }
}

TEST_CASE("pi-periodicity in the homodyne angle") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const Draw d = random_draw(rng);
        if (std::abs(u_theta(d.theta, d.p.y)) < 0.05) continue;
        const double a =
            breakdown(d.omega, d.p, d.sq, d.theta, SpectrumMode::general).total;
        const double b =
            breakdown(d.omega, d.p, d.sq, d.theta + 3.141592653589793,
                      SpectrumMode::general)
                .total;
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
}

TEST_CASE("forced cancellation zeroes the backaction family identically") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        const Draw d = random_draw(rng);
        if (std::abs(u_theta(d.theta, d.p.y)) < 0.05) continue;
        const SpectrumBreakdown b = breakdown(d.omega, d.p, d.sq, d.theta,
                                              SpectrumMode::perfect_enforced);
        CHECK(b.s_b == 0.0);
        CHECK(b.s_fb == 0.0);
        CHECK(b.s_bh == 0.0);
    }
}

TEST_CASE("phase-quadrature readout zeroes the homodyne family") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const Draw d = random_draw(rng);
        const SpectrumBreakdown b =
            breakdown(d.omega, d.p, d.sq, 0.0, SpectrumMode::general);
        CHECK(b.s_h == 0.0);
        CHECK(b.s_fh == 0.0);
        CHECK(b.s_bh == 0.0);
    }
}

TEST_CASE("matched closed form at resonance, vacuum input") {
    RawConfig c;
    c.y = 0.0;
    const SystemParams p = derive(c);
    const double expect =
        0.5 * (2.0 + p.gamma_m * p.gamma_m / (4.0 * p.omega_m * p.omega_m)) +
        p.kappa * p.gamma_m / (8.0 * p.g * p.g);
    // the closed form with the high-temperature thermal floor at T = 0
    const double got =
        perfect_cqnc_spectrum(p.omega_m, p, SqueezingState::vacuum(), 0.0,
                              ThermalModel::high_temperature);
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("matched closed form equals the forced-cancellation budget") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> uy(-1.2, 1.2), uw(0.7, 1.3),
        uth(-1.4, 1.4), un(0.0, 25.0);
    int used = 0;
    for (int i = 0; i < 2000 && used < 1000; ++i) {
        RawConfig c;
        c.y = uy(rng);
        const SystemParams p = derive(c);
        const double omega = uw(rng) * p.omega_m;
        const double theta = uth(rng);
        if (std::abs(u_theta(theta, p.y)) < 0.05) continue;
        ++used;
        const SqueezingState sq =
            SqueezingState::pure(un(rng), phi_opt(p.y, 1.0));
        const double closed = perfect_cqnc_spectrum(omega, p, sq, theta);
        const double budget =
            breakdown(omega, p, sq, theta, SpectrumMode::perfect_enforced,
                      {true, ThermalModel::exact_occupation})
                .total;
        CHECK(closed == doctest::Approx(budget).epsilon(1e-9));
    }
    CHECK(used == 1000);
}

TEST_CASE("vacuum input approaches the forced cancellation as Q grows") {
    double last = 1e300;
    for (double q : {1e4, 1e5, 1e6, 1e7}) {
        RawConfig c;
        c.gamma_m_hz = c.omega_m_hz / q;
        const SystemParams p = derive(c);
        const double omega = 1.1 * p.omega_m;
        const SqueezingState vac = SqueezingState::vacuum();
        const double gen =
            breakdown(omega, p, vac, 0.0, SpectrumMode::general).total;
        const double per =
            breakdown(omega, p, vac, 0.0, SpectrumMode::perfect_enforced).total;
        const double resid = std::abs(gen - per);
        CHECK(resid < last);
        last = resid;
    }
}

TEST_CASE("power-optimized bare-cavity budget touches the SQL") {
    RawConfig c;
    c.y = 0.0;
    for (double off : {4.0, -4.0}) {
        SystemParams p = derive(c);
        p.big_g = 0.0;  // no antinoise path
        const double omega = p.omega_m + off * p.gamma_m;
        double best = 1e300;
        for (int i = 0; i <= 400; ++i) {
            p.g = p.g0 * std::pow(10.0, 1.0 + 4.0 * i / 400.0);
            const SpectrumBreakdown b = breakdown(
                omega, p, SqueezingState::vacuum(), 0.0, SpectrumMode::general);
            best = std::min(best, b.s_f + b.s_b);
        }
        const double limit = sql(omega, p);
        CHECK(best / limit > 0.5);
        CHECK(best / limit < 2.0);  // within 3 dB
        CHECK(best == doctest::Approx(limit).epsilon(1e-3));
    }
}

TEST_CASE("standard quantum limit values") {
    const SystemParams p = reference();
    CHECK(sql(p.omega_m, p) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(sql(1e-9 * p.omega_m, p) == doctest::Approx(p.q_m).epsilon(1e-6));
    CHECK(sql(0.8 * p.omega_m, p) ==
          doctest::Approx(0.36 * p.omega_m / p.gamma_m).epsilon(1e-3));
}

TEST_CASE("SI conversion") {
    const SystemParams p = reference();
    CHECK(to_si(0.0, p) == 0.0);
    CHECK(to_si(1.0, p) ==
          doctest::Approx(p.force_scale * p.force_scale).epsilon(1e-12));
    CHECK_THROWS_AS(to_si(-1.0, p), ValidityError);
}

TEST_CASE("thermal floor models") {
    RawConfig c;
    c.temperature_k = 0.0;
    SystemParams p = derive(c);
    CHECK(thermal_floor(p, ThermalModel::exact_occupation) == 0.5);
    CHECK(thermal_floor(p, ThermalModel::high_temperature) == 0.0);
    c.temperature_k = 1e-5;
    p = derive(c);
    CHECK(thermal_floor(p, ThermalModel::exact_occupation) ==
          doctest::Approx(p.n_bar_m + 0.5));
}

TEST_CASE("singular readout angle is reported") {
    const SystemParams p = reference(0.5);
    const double bad = std::atan(1.0 / (2.0 * p.y));
    CHECK_THROWS_AS(
        breakdown(p.omega_m, p, SqueezingState::vacuum(), bad,
                  SpectrumMode::general),
        ValidityError);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "cqnc/config.hpp"
#include "cqnc/params.hpp"

using namespace cqnc;
using Complex = std::complex<double>;

namespace {
RawConfig reference() { return RawConfig{}; }
}

TEST_CASE("derive reproduces the enhanced-coupling ratio") {
    const SystemParams p = derive(reference());
    const double ratio = p.g / p.g0;
    CHECK(ratio == doctest::Approx(4.91e3).epsilon(0.01));
    // frozen value for regression
    CHECK(ratio == doctest::Approx(4898.7425194).epsilon(1e-9));
}

TEST_CASE("derive power scaling: doubling P_L multiplies g by sqrt(2)") {
    RawConfig c = reference();
    const SystemParams p1 = derive(c);
    c.power_uw *= 2.0;
    const SystemParams p2 = derive(c);
    CHECK(p2.g / p1.g == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("derive thermal occupation") {
    RawConfig c = reference();
    c.temperature_k = 0.0;
    CHECK(derive(c).n_bar_m == 0.0);
    c.temperature_k = 300.0;
    const SystemParams p = derive(c);
    CHECK(p.n_bar_m > 1e6);
}

TEST_CASE("derive force scale against direct arithmetic") {
    const SystemParams p = derive(reference());
    // sqrt(hbar * 1 ng * 2pi 300 kHz * 2pi 30 mHz), independent calculator
    CHECK(p.force_scale == doctest::Approx(6.121237123881e-21).epsilon(1e-9));
}

TEST_CASE("derive rejects inadmissible configurations") {
    RawConfig c = reference();
    c.kappa_hz = -1.0;
    CHECK_THROWS_AS(derive(c), ConfigError);
    c = reference();
    c.gamma_m_hz = 1e3;  // Q_m = 300
    CHECK_THROWS_AS(derive(c), ConfigError);
    c = reference();
    c.mass_kg = 0.0;
    CHECK_THROWS_AS(derive(c), ConfigError);
}

TEST_CASE("pure squeezing construction") {
    CHECK(SqueezingState::pure(0.0, 0.0).m() == Complex{0.0, 0.0});
    const SqueezingState s = SqueezingState::pure(10.0, 0.0);
    CHECK(std::abs(s.m()) == doctest::Approx(std::sqrt(110.0)));
    const SqueezingState r = SqueezingState::pure(10.0, 3.141592653589793);
    CHECK(r.m().real() == doctest::Approx(-std::sqrt(110.0)));
    CHECK_THROWS_AS(SqueezingState(1.0, Complex{5.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(SqueezingState(26.0, Complex{0.0, 0.0}), ConfigError);
    CHECK_NOTHROW(SqueezingState(26.0, Complex{0.0, 0.0}, true));
}

TEST_CASE("squeezing physicality bound holds for all constructors") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> un(0.0, 25.0), uphi(-3.14, 3.14);
    for (int i = 0; i < 200; ++i) {
        const SqueezingState s = SqueezingState::pure(un(rng), uphi(rng));
        CHECK(std::norm(s.m()) <= s.n() * (s.n() + 1.0) * (1.0 + 1e-12));
    }
}

TEST_CASE("OPO conversion") {
    CHECK(SqueezingState::from_opo({0.0, 0.0}, 1.0).n() == 0.0);
    CHECK(std::abs(SqueezingState::from_opo({0.0, 0.0}, 1.0).m()) == 0.0);

    // |eps| = gamma/4: b_x = gamma/4, b_y = 3 gamma/4
    const SqueezingState s = SqueezingState::from_opo({0.25, 0.0}, 1.0);
    CHECK(s.n() == doctest::Approx(16.0 / 9.0).epsilon(1e-12));
    CHECK(s.m().real() == doctest::Approx(20.0 / 9.0).epsilon(1e-12));
    // the OPO output is pure: bound saturates
    CHECK(std::norm(s.m()) ==
          doctest::Approx(s.n() * (s.n() + 1.0)).epsilon(1e-12));

    double last_n = 0;
    for (double eps : {0.4, 0.45, 0.49, 0.499}) {
        const SqueezingState t = SqueezingState::from_opo({eps, 0.0}, 1.0);
        CHECK(t.n() > last_n);
        CHECK(std::norm(t.m()) <= t.n() * (t.n() + 1.0) * (1 + 1e-12));
        last_n = t.n();
    }
    CHECK_THROWS_AS(SqueezingState::from_opo({0.5, 0.0}, 1.0), ConfigError);
    CHECK_THROWS_AS(SqueezingState::from_opo({0.7, 0.0}, 1.0), ConfigError);
}

TEST_CASE("squeezing level conversion") {
    CHECK(SqueezingState::from_level(0.0).n() == doctest::Approx(0.0));
    CHECK(SqueezingState::from_level(-20.0).n() ==
          doctest::Approx(24.5025).epsilon(1e-6));
    CHECK(SqueezingState::from_level(-9.0).n() ==
          doctest::Approx(1.51730).epsilon(1e-4));
    CHECK_THROWS_AS(SqueezingState::from_level(3.0), ConfigError);
}

TEST_CASE("phi_opt minimizes the shot functional on a fine grid") {
    auto sigma = [](double y, double n, double phi) {
        const double mp = mu_plus(y), mm = mu_minus(y);
        const double mag = std::sqrt(n * (n + 1.0));
        return mp * mp * n + (8 * y * y - mp * mp) * mag * std::cos(phi) -
               4 * y * mm * mag * std::sin(phi);
    };
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uy(-1.2, 1.2);
    for (int i = 0; i < 25; ++i) {
        const double y = uy(rng);
        const double n = 5.0;
        const double opt = phi_opt(y, n);
        const double s_opt = sigma(y, n, opt);
        double grid_min = 1e300;
        for (int k = 0; k < 10000; ++k) {
            const double phi = -3.141592653589793 +
                               6.283185307179586 * (k + 0.5) / 10000.0;
            grid_min = std::min(grid_min, sigma(y, n, phi));
        }
        CHECK(s_opt <= grid_min + 1e-12 * (1.0 + std::abs(s_opt)));
    }
}

TEST_CASE("phi_opt branch facts") {
    CHECK(phi_opt(0.0, 10.0) == doctest::Approx(0.0));
    // at y = 1/2 the numerator vanishes and the minimizing branch is phi = pi
    CHECK(std::abs(phi_opt(0.5, 10.0)) == doctest::Approx(3.141592653589793));
    CHECK(phi_opt_paper(0.0) == doctest::Approx(0.0));
    // tan singularity handled: mu_+^2 = 8 y^2 at y ~ 0.2071
    const double ys = std::sqrt((6.0 - std::sqrt(32.0)) / 8.0);
    CHECK(std::abs(phi_opt(ys, 10.0)) == doctest::Approx(1.5707963268));
}

TEST_CASE("config parsing is strict and round-trips") {
    CHECK_THROWS_AS(parse_config("{\"omega_m_h\": 1}"), ConfigError);
    CHECK_THROWS_AS(parse_config("{\"squeezing\": {\"phase\": 1}}"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config("{\"squeezing\": {\"n\": 26}}"), ConfigError);

    Config cfg;
    cfg.raw.y = 0.5;
    cfg.squeezing.n = 10.0;
    cfg.squeezing.policy = PhasePolicy::paper;
    const Config back = parse_config(config_to_json(cfg));
    CHECK(back.raw.y == cfg.raw.y);
    CHECK(back.squeezing.n == cfg.squeezing.n);
    CHECK(back.squeezing.policy == PhasePolicy::paper);

    const Config c2 = parse_config(
        "{\"y\": 1.0, \"squeezing\": {\"n\": 2, \"phase_rad\": \"opt\"}}");
    CHECK(c2.squeezing.policy == PhasePolicy::sigma_min);
    const SqueezingState s = c2.squeezing.resolve(1.0);
    CHECK(std::abs(s.m()) == doctest::Approx(std::sqrt(6.0)));
}

#pragma once

#include "cqnc/spectra.hpp"

namespace cqnc {

struct OptimizationResult {
    double theta_opt = 0;      // in (-pi/2, pi/2]
    double s_min = 0;          // dimensionless PSD at theta_opt
    double s_theta0 = 0;       // dimensionless PSD at theta = 0
    double advantage_db = 0;   // -10 log10(s_min / s_theta0), >= 0 when valid
    bool valid = true;
};

// Matched system, closed form: tan(theta_opt) = -(K/2L)/(1 - y K/L).
// Frequency-independent; valid requires L > 0.
OptimizationResult theta_opt_perfect(double y, const SqueezingState& sq);

// Minimized matched-system spectrum at one frequency.
double s_min_perfect(double omega, const SystemParams& p,
                     const SqueezingState& sq,
                     ThermalModel thermal = ThermalModel::exact_occupation);

// Resonant drive (delta_c = 0), mismatched couplings/decays, pure squeezing
// with zero phase. theta from the correlated-backaction projection; the
// optimized spectrum uses the threshold form whose root defines N_min.
OptimizationResult theta_opt_resonant_imperfect(
    double omega, const SystemParams& p, const SqueezingState& sq,
    ThermalModel thermal = ThermalModel::exact_occupation);

// The threshold spectrum as a function of N (pure squeezing, phi = 0).
double resonant_threshold_spectrum(
    double omega, const SystemParams& p, double n,
    ThermalModel thermal = ThermalModel::exact_occupation);

// General-case coefficients: the exact linear and quadratic coefficients of
// the budget in B = sin(theta)/u_theta, S(B) = S0 + K' B + L' B^2.
struct GeneralCoefficients {
    double k_prime = 0;
    double l_prime = 0;
    double s_theta0 = 0;
};
GeneralCoefficients kprime_lprime(double omega, const SystemParams& p,
                                  const SqueezingState& sq,
                                  SpectrumMode mode = SpectrumMode::general,
                                  SpectraOptions opt = {true});

// General closed-form optimum over the homodyne angle.
OptimizationResult theta_opt_general(double omega, const SystemParams& p,
                                     const SqueezingState& sq,
                                     SpectrumMode mode = SpectrumMode::general,
                                     SpectraOptions opt = {true});

// Independent numeric minimizer: coarse grid over (-pi/2, pi/2] plus
// golden-section refinement on the breakdown total.
double theta_opt_numeric(double omega, const SystemParams& p,
                         const SqueezingState& sq,
                         SpectrumMode mode = SpectrumMode::general,
                         SpectraOptions opt = {true});

struct NminResult {
    double n_min = 0;
    bool threshold_found = false;
};

// Smallest squeezing occupation keeping the optimized resonant spectrum
// non-negative; bisection to 1e-6 absolute on [0, n_cap].
NminResult n_min(double omega, const SystemParams& p, double n_cap = 25.0,
                 ThermalModel thermal = ThermalModel::exact_occupation);

}  // namespace cqnc

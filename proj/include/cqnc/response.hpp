#pragma once

#include <complex>

#include "cqnc/params.hpp"

namespace cqnc {

using Complex = std::complex<double>;

// All complex response functions of the three-mode system at one frequency.
// chi_a  : cavity field,      1 / (kappa/2 + i w)
// chi_m  : mechanical mode,   w_m / ((w_m^2 - w^2) + i w gamma_m)
// chi_d  : negative-mass mode, -w_m / ((w_m^2 - w^2 + Gamma^2/4) + i w Gamma)
// chi_ap : detuning-dressed cavity response
// z      : chi_a (1 - 1/(kappa chi_ap(-w)))
// r      : chi_d / chi_m
// a      : (G/g) sqrt(Gamma/gamma_m) r
struct SusceptibilityBundle {
    Complex chi_a{};
    Complex chi_m{};
    Complex chi_d{};
    Complex chi_ap{};
    Complex z{};
    Complex r{};
    Complex a{};
    double omega = 0;
};

// Evaluation switches shared by the response and spectra layers.
//   approx_chi_a   : replace chi_a by 2/kappa everywhere it enters
//   perfect_cqnc   : enforce chi_d = -chi_m, G = g, Gamma = gamma_m identically
struct ResponseOptions {
    bool approx_chi_a = false;
    bool perfect_cqnc = false;
};

Complex chi_a(double omega, const SystemParams& p);
Complex chi_m(double omega, const SystemParams& p);
Complex chi_d(double omega, const SystemParams& p);
Complex chi_a_prime(double omega, const SystemParams& p,
                    ResponseOptions opt = {});

SusceptibilityBundle bundle(double omega, const SystemParams& p,
                            ResponseOptions opt = {});

// Relative error in |chi_a| committed by the flat approximation 2/kappa:
// sqrt(1 + 4 (w/kappa)^2) - 1.
double approximation_error(double omega, double kappa);

}  // namespace cqnc

#pragma once

#include <functional>
#include <vector>

#include "cqnc/optimize.hpp"

namespace cqnc {

// Signal-to-noise ratio of a scaled force against a dimensionless PSD.
double snr(double f_ext, double s);

// Force sensitivity in N/sqrt(Hz) at a given readout angle.
double sensitivity(double omega, const SystemParams& p,
                   const SqueezingState& sq, double theta,
                   SpectrumMode mode = SpectrumMode::general,
                   SpectraOptions opt = {true});

// Signal-response power R_c = g^2 kappa gamma_m |chi_ap|^2 |chi_m|^2 u^2.
double signal_response(double omega, const SystemParams& p, double theta,
                       ResponseOptions opt = {});

// Readout-angle gain over the standard phase measurement, u_theta^2.
double signal_improvement(double theta, double y);

struct BandReport {
    double center = 0;             // rad/s
    double lower = 0, upper = 0;   // rad/s
    double bandwidth_gamma_m = 0;  // (upper-lower)/gamma_m
    std::string criterion;
};

// Contiguous frequency intervals where criterion(omega) > 1 (or < 1 for
// attenuation criteria), located on a caller-supplied grid and refined by
// bisection to gamma_m/100.
std::vector<BandReport> find_bands(const std::function<double(double)>& value,
                                   const std::vector<double>& grid,
                                   double gamma_m, bool above,
                                   const std::string& label);

// Uniform or log-spaced grid centered on the mechanical resonance.
std::vector<double> resonance_grid(const SystemParams& p, double half_span_wm,
                                   int points, bool log_spaced = false);

}  // namespace cqnc

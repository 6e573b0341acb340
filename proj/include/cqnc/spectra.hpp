#pragma once

#include "cqnc/params.hpp"
#include "cqnc/response.hpp"

namespace cqnc {

enum class SpectrumMode { general, perfect_enforced };
enum class ThermalModel { exact_occupation, high_temperature };

struct SpectraOptions {
    bool approx_chi_a = false;
    ThermalModel thermal = ThermalModel::exact_occupation;
};

// Force-referred weights of the added noise over the input channels,
// grouped by origin. The homodyne group is stored without its sin/u factor.
struct NoiseWeights {
    Complex shot_x{}, shot_p{};  // cavity vacuum, direct path
    Complex back_x{};            // radiation-pressure backaction path
    Complex hom_x{}, hom_p{};    // reflected-input leakage of the rotation
    Complex at_x{}, at_p{};      // negative-mass mode vacuum
};

NoiseWeights force_noise_weights(double omega, const SystemParams& p,
                                 SpectrumMode mode, bool approx_chi_a);

// The eight contributions to the dimensionless force-noise PSD at one
// frequency, plus their sum.
struct SpectrumBreakdown {
    double s_th = 0, s_f = 0, s_at = 0, s_b = 0;
    double s_h = 0, s_fb = 0, s_fh = 0, s_bh = 0;
    double total = 0;
    double omega = 0;
    double theta = 0;
    SpectrumMode mode = SpectrumMode::general;
};

// Local-oscillator rotation factor B = sin(theta)/u_theta with
// u_theta = cos(theta) - 2 y sin(theta). Throws ValidityError at the
// singular angle where the measured quadrature carries no signal.
double lo_factor(double theta, double y);
double u_theta(double theta, double y);

SpectrumBreakdown breakdown(double omega, const SystemParams& p,
                            const SqueezingState& sq, double theta,
                            SpectrumMode mode, SpectraOptions opt = {});

// S(theta) as a quadratic in B: total = c0 + c1 B + c2 B^2.
struct ThetaQuadratic {
    double c0 = 0, c1 = 0, c2 = 0;
    double eval(double b) const { return c0 + b * (c1 + b * c2); }
};

ThetaQuadratic theta_quadratic(double omega, const SystemParams& p,
                               const SqueezingState& sq, SpectrumMode mode,
                               SpectraOptions opt = {});

// Shot-noise coefficients of the matched closed form: the quadratic bracket
// is mu_+^2/2 + Sigma + K B + L B^2 up to the kappa/(g^2 gamma_m |chi_m|^2)
// prefactor.
double sigma_shot(double n, Complex m, double y);
double k_coeff(double n, Complex m, double y);
double l_coeff(double n, Complex m, double y);

// Matched-system closed form of the total PSD.
double perfect_cqnc_spectrum(double omega, const SystemParams& p,
                             const SqueezingState& sq, double theta,
                             ThermalModel thermal = ThermalModel::exact_occupation);

// Standard quantum limit for stationary force detection.
double sql(double omega, const SystemParams& p);

// Dimensionless PSD -> N^2/Hz.
double to_si(double s_dimensionless, const SystemParams& p);

double thermal_floor(const SystemParams& p, ThermalModel thermal);

}  // namespace cqnc

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cqnc {

// Raised on malformed or physically inadmissible configuration (CLI exit 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a computation leaves its validity domain (CLI exit 3).
struct ValidityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sensor configuration as found in the JSON file. Frequencies are ordinary
// (cycles/s), matching the experimental convention "omega_m/2pi = ...".
struct RawConfig {
    double omega_m_hz = 300e3;    // mechanical frequency
    double gamma_m_hz = 30e-3;    // mechanical damping
    double kappa_hz = 10e6;       // cavity linewidth
    double g0_hz = 300.0;         // single-photon optomechanical coupling
    double lambda_nm = 780.0;     // drive wavelength
    double power_uw = 24.0;       // drive power
    double mass_kg = 1e-12;       // effective mass
    double temperature_k = 0.0;   // bath temperature
    double y = 0.0;               // normalized detuning Delta_c/kappa
    double coupling_ratio = 1.0;  // G/g
    double decay_ratio = 1.0;     // Gamma/gamma_m

    void validate() const;
};

// Derived quantities in angular units (rad/s) plus the SI force scale.
struct SystemParams {
    double omega_m = 0, gamma_m = 0, kappa = 0, g0 = 0;  // rad/s
    double omega_laser = 0;   // rad/s
    double pump_rate = 0;     // E_L, rad/s
    double alpha_s = 0;       // steady-state intracavity amplitude
    double g = 0;             // enhanced optomechanical coupling, rad/s
    double big_g = 0;         // atomic coupling G, rad/s
    double big_gamma = 0;     // atomic dephasing Gamma, rad/s
    double delta_c = 0;       // effective cavity detuning, rad/s
    double y = 0;             // delta_c / kappa
    double mass = 0;          // kg
    double temperature = 0;   // K
    double n_bar_m = 0;       // thermal phonon occupation
    double q_m = 0;           // mechanical quality factor
    double force_scale = 0;   // sqrt(hbar m omega_m gamma_m), N/sqrt(Hz)
};

SystemParams derive(const RawConfig& config);

// Injected squeezed-vacuum input: occupation N and anomalous correlation M,
// constrained to |M| <= sqrt(N(N+1)). N is capped at n_max (experimental
// ceiling) unless allow_large is set.
class SqueezingState {
  public:
    static constexpr double n_max = 25.0;

    SqueezingState() = default;
    SqueezingState(double n, std::complex<double> m, bool allow_large = false);

    static SqueezingState vacuum() { return {}; }
    // Pure (minimum-uncertainty) squeezing, |M| = sqrt(N(N+1)).
    static SqueezingState pure(double n, double phi, bool allow_large = false);
    // Below-threshold OPO output with nonlinearity eps and decay gamma_opo.
    static SqueezingState from_opo(std::complex<double> eps, double gamma_opo);
    // From a quoted squeezing level in dB (<= 0), pure with phi = 0.
    static SqueezingState from_level(double level_db);

    double n() const { return n_; }
    std::complex<double> m() const { return m_; }

  private:
    double n_ = 0.0;
    std::complex<double> m_{0.0, 0.0};
};

// Stationarity angle of the squeezing-phase optimization at theta = 0:
// tan(phi) = 4 y mu_- / (mu_+^2 - 8 y^2), branch chosen to minimize the
// shot-noise functional Sigma. Result in (-pi, pi].
double phi_opt(double y, double squeezing_n = 1.0);

// The same right-hand side read directly as an angle in radians, wrapped to
// (-pi, pi]. This is the convention behind the published parameter-sweep
// figures; phi_opt() above is the actual Sigma-minimizing phase. The two
// coincide at y = 0.
double phi_opt_paper(double y);

// mu_+- = 1/2 +- 2 y^2
inline double mu_plus(double y) { return 0.5 + 2.0 * y * y; }
inline double mu_minus(double y) { return 0.5 - 2.0 * y * y; }

}  // namespace cqnc

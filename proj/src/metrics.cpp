#include "cqnc/metrics.hpp"

#include <cmath>

namespace cqnc {

double snr(double f_ext, double s) {
    if (s <= 0) throw ValidityError("SNR undefined for non-positive PSD");
    return std::abs(f_ext) / std::sqrt(s);
}

double sensitivity(double omega, const SystemParams& p,
                   const SqueezingState& sq, double theta, SpectrumMode mode,
                   SpectraOptions opt) {
    const double s = breakdown(omega, p, sq, theta, mode, opt).total;
    return std::sqrt(to_si(s, p));
}

double signal_response(double omega, const SystemParams& p, double theta,
                       ResponseOptions opt) {
    const Complex cap = chi_a_prime(omega, p, opt);
    const double u = u_theta(theta, p.y);
    return p.g * p.g * p.kappa * p.gamma_m * std::norm(cap) *
           std::norm(chi_m(omega, p)) * u * u;
}

double signal_improvement(double theta, double y) {
    const double u = u_theta(theta, y);
    return u * u;
}

std::vector<BandReport> find_bands(const std::function<double(double)>& value,
                                   const std::vector<double>& grid,
                                   double gamma_m, bool above,
                                   const std::string& label) {
    auto hit = [&](double w) {
        const double v = value(w);
        return above ? v > 1.0 : v < 1.0;
    };
    auto refine = [&](double lo, double hi) {
        // bisect the criterion crossing to gamma_m/100
        while (hi - lo > gamma_m / 100.0) {
            const double mid = 0.5 * (lo + hi);
            if (hit(mid) == hit(lo))
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    std::vector<BandReport> bands;
    const std::size_t n = grid.size();
    std::vector<char> inside(n);
    for (std::size_t i = 0; i < n; ++i) inside[i] = hit(grid[i]);
    std::size_t i = 0;
    while (i < n) {
        if (!inside[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && inside[j + 1]) ++j;
        BandReport b;
        b.lower = i == 0 ? grid[0] : refine(grid[i - 1], grid[i]);
        b.upper = j + 1 == n ? grid[n - 1] : refine(grid[j], grid[j + 1]);
        b.center = 0.5 * (b.lower + b.upper);
        b.bandwidth_gamma_m = (b.upper - b.lower) / gamma_m;
        b.criterion = label;
        bands.push_back(b);
        i = j + 1;
    }
    return bands;
}

std::vector<double> resonance_grid(const SystemParams& p, double half_span_wm,
                                   int points, bool log_spaced) {
    std::vector<double> grid;
    grid.reserve(points);
    if (!log_spaced) {
        const double lo = p.omega_m * (1.0 - half_span_wm);
        const double hi = p.omega_m * (1.0 + half_span_wm);
        for (int i = 0; i < points; ++i)
            grid.push_back(lo + (hi - lo) * i / (points - 1));
        return grid;
    }
    // symmetric log-spaced offsets around resonance, densest near omega_m
    const double max_off = p.omega_m * half_span_wm;
    const double min_off = p.gamma_m / 10.0;
    const int half = points / 2;
    std::vector<double> offs;
    for (int i = 0; i < half; ++i) {
        const double f = static_cast<double>(i) / (half - 1);
        offs.push_back(min_off * std::pow(max_off / min_off, f));
    }
    for (auto it = offs.rbegin(); it != offs.rend(); ++it)
        grid.push_back(p.omega_m - *it);
    grid.push_back(p.omega_m);
    for (double o : offs) grid.push_back(p.omega_m + o);
    return grid;
}

}  // namespace cqnc

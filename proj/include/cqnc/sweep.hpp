#pragma once

#include <optional>

#include "cqnc/config.hpp"
#include "cqnc/io.hpp"
#include "cqnc/metrics.hpp"

namespace cqnc {

enum class Quantity { spectrum, advantage_db, sensitivity, r_c, improvement };
enum class ThetaPolicy { zero, opt, opt_oracle, fixed };

struct Axis {
    std::string name;  // omega | power_g2 | y | coupling_ratio | decay_ratio | n | theta
    double min = 0;
    double max = 1;
    int points = 2;
    bool log_scale = false;
};

struct SweepSpec {
    Axis axis1;
    std::optional<Axis> axis2;
    Config fixed;
    Quantity quantity = Quantity::spectrum;
    ThetaPolicy theta_policy = ThetaPolicy::zero;
    double theta_fixed = 0.0;
    SpectrumMode mode = SpectrumMode::general;
    bool approx_chi_a = true;
    ThermalModel thermal = ThermalModel::exact_occupation;
    double omega_wm = 1.0;  // evaluation frequency in omega_m units
    int curve_index = 0;    // written into the "curve" column

    void validate() const;
};

// Evaluate one sweep; cells run in parallel, rows are emitted in
// deterministic axis1-major order.
Table run(const SweepSpec& spec);

// Run several curves of one figure into a single long-format table.
Table run_curves(const std::vector<SweepSpec>& specs);

struct FigurePreset {
    std::string id;
    std::string note;
    std::vector<SweepSpec> specs;
    std::vector<std::string> curve_labels;
};

FigurePreset figure_preset(const std::string& id);
std::vector<std::string> known_figures();

std::string quantity_name(Quantity q);

// Fully resolved provenance record for a sweep (parameters, policies,
// artifact version).
std::string sweep_metadata(const SweepSpec& spec);
std::string preset_metadata(const FigurePreset& preset);

SweepSpec parse_sweep_spec(const std::string& json_text);

}  // namespace cqnc

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqnc/constants.hpp"
#include "cqnc/oracle.hpp"
#include "cqnc/sweep.hpp"

namespace {

using namespace cqnc;
using nlohmann::json;

struct Range {
    double lo = 0.9, hi = 1.1;
    int points = 201;
};

Range parse_range(const std::string& text) {
    Range r;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> r.lo >> c1 >> r.hi >> c2 >> r.points) || c1 != ':' ||
        c2 != ':' || r.points < 1)
        throw ConfigError("range must be min:max:points, got '" + text + "'");
    return r;
}

struct OutputTarget {
    std::string path = "-";
    std::string format = "csv";

    void write(const Table& t) const {
        std::ostringstream buf;
        if (format == "csv")
            write_csv(t, buf);
        else
            write_jsonl(t, buf);
        if (path == "-") {
            std::cout << buf.str();
        } else {
            std::ofstream out(path);
            if (!out) throw ConfigError("cannot write to " + path);
            out << buf.str();
        }
    }
};

double resolve_theta_arg(const std::string& text, double omega,
                         const SystemParams& p, const SqueezingState& sq,
                         SpectrumMode mode, SpectraOptions opt,
                         bool allow_fallback, bool* valid_out = nullptr) {
    if (text == "opt") {
        const OptimizationResult r = theta_opt_general(omega, p, sq, mode, opt);
        if (valid_out) *valid_out = r.valid;
        if (!r.valid && !allow_fallback)
            throw ValidityError("closed-form optimum invalid (L' <= 0); pass "
                                "--allow-fallback to use theta = 0");
        return r.theta_opt;
    }
    if (text == "opt-oracle")
        return theta_opt_pencil(omega, p, sq, opt.thermal).theta;
    try {
        return std::stod(text);
    } catch (...) {
        throw ConfigError("theta must be a number, 'opt' or 'opt-oracle'");
    }
}

SpectrumMode parse_mode(const std::string& text) {
    if (text == "general") return SpectrumMode::general;
    if (text == "perfect") return SpectrumMode::perfect_enforced;
    throw ConfigError("mode must be general or perfect");
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Quantum noise budget of a hybrid optomechanical force "
                 "sensor with variational homodyne readout"};
    app.set_version_flag("--version", []() {
        std::ostringstream os;
        os << "cqnc " << constants::version << "\n"
           << "hbar = " << constants::hbar << " J s\n"
           << "k_B  = " << constants::k_boltzmann << " J/K\n"
           << "c    = " << constants::c_light << " m/s";
        return os.str();
    }());
    app.require_subcommand(1);

    std::string config_path, out_path = "-", format = "csv";
    std::string omega_range = "0.9:1.1:201";
    double omega_offset = std::numeric_limits<double>::quiet_NaN();
    std::string theta_arg = "0";
    std::string mode_arg = "general";
    bool approx_flag = true, exact_chi_a = false, thermal_high = false;
    bool allow_fallback = false;

    auto add_common = [&](CLI::App* cmd, bool with_omega = true) {
        cmd->add_option("--config", config_path, "sensor configuration JSON");
        cmd->add_option("--out", out_path, "output path or - for stdout");
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        if (with_omega) {
            cmd->add_option("--omega", omega_range,
                            "frequency range min:max:points in omega_m units");
            cmd->add_option("--omega-offset", omega_offset,
                            "single frequency omega_m + k gamma_m");
        }
        cmd->add_flag("--exact-chi-a", exact_chi_a,
                      "keep the full cavity response everywhere");
        cmd->add_flag("--thermal-high-t", thermal_high,
                      "use the high-temperature thermal floor");
        cmd->add_flag("--allow-fallback", allow_fallback,
                      "fall back to theta = 0 when the closed-form optimum "
                      "is invalid");
    };

    auto* c_spectrum = app.add_subcommand("spectrum", "force-noise PSD");
    add_common(c_spectrum);
    c_spectrum->add_option("--theta", theta_arg, "angle, 'opt' or 'opt-oracle'");
    c_spectrum->add_option("--mode", mode_arg, "general or perfect");

    auto* c_adv = app.add_subcommand("advantage", "noise-reduction advantage");
    add_common(c_adv);
    c_adv->add_option("--mode", mode_arg, "general or perfect");

    auto* c_sens = app.add_subcommand("sensitivity", "force sensitivity");
    add_common(c_sens);
    c_sens->add_option("--mode", mode_arg, "general or perfect");

    auto* c_signal = app.add_subcommand("signal", "signal response and "
                                                  "improvement");
    add_common(c_signal);
    c_signal->add_option("--theta", theta_arg, "angle, 'opt' or 'opt-oracle'");

    std::string criterion = "rc", window = "0.99:1.01:20001";
    auto* c_bands = app.add_subcommand("bands", "amplification bands");
    add_common(c_bands, false);
    c_bands->add_option("--criterion", criterion, "rc or improvement")
        ->check(CLI::IsMember({"rc", "improvement"}));
    c_bands->add_option("--theta", theta_arg, "angle, 'opt' or 'opt-oracle'");
    c_bands->add_option("--window", window,
                        "scan window min:max:points in omega_m units");

    auto* c_nmin = app.add_subcommand("nmin", "threshold squeezing parameter");
    add_common(c_nmin);

    std::string spec_path;
    auto* c_sweep = app.add_subcommand("sweep", "run a sweep specification");
    c_sweep->add_option("--spec", spec_path, "sweep spec JSON")->required();
    c_sweep->add_option("--out", out_path, "output path or -");
    c_sweep->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string figure_id, outdir = ".";
    bool svg = false;
    auto* c_fig = app.add_subcommand("figure", "run a figure preset");
    c_fig->add_option("--id", figure_id, "preset id, e.g. fig5")->required();
    c_fig->add_option("--outdir", outdir, "output directory");
    c_fig->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    c_fig->add_flag("--svg", svg, "also render a quick-look chart");

    int draws = 1000;
    double tolerance = 0.05;
    unsigned seed = 20220811;
    auto* c_oracle = app.add_subcommand("oracle-check",
                                        "validate the analytic budget "
                                        "against the Langevin solver");
    add_common(c_oracle, false);
    c_oracle->add_option("--draws", draws, "number of random draws");
    c_oracle->add_option("--tolerance", tolerance,
                         "tolerance for the exact-cavity tier");
    c_oracle->add_option("--seed", seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    Config cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    const SystemParams params = derive(cfg.raw);
    const SqueezingState sq = cfg.squeezing.resolve(params.y);
    const SpectraOptions sopt{!exact_chi_a,
                              thermal_high ? ThermalModel::high_temperature
                                           : ThermalModel::exact_occupation};
    const OutputTarget target{out_path, format};

    auto omega_list = [&]() {
        std::vector<double> ws;
        if (!std::isnan(omega_offset)) {
            ws.push_back(params.omega_m + omega_offset * params.gamma_m);
            return ws;
        }
        const Range r = parse_range(omega_range);
        for (int i = 0; i < r.points; ++i) {
            const double f = r.points == 1
                                 ? 0.0
                                 : static_cast<double>(i) / (r.points - 1);
            ws.push_back((r.lo + (r.hi - r.lo) * f) * params.omega_m);
        }
        return ws;
    };

    if (*c_spectrum) {
        const SpectrumMode mode = parse_mode(mode_arg);
        Table t;
        t.columns = {"omega_wm", "s_th", "s_f", "s_at", "s_b",   "s_h",
                     "s_fb",     "s_fh", "s_bh", "total", "sql", "theta"};
        for (double w : omega_list()) {
            const double th = resolve_theta_arg(theta_arg, w, params, sq, mode,
                                                sopt, allow_fallback);
            const SpectrumBreakdown b = breakdown(w, params, sq, th, mode, sopt);
            t.add_row({w / params.omega_m, b.s_th, b.s_f, b.s_at, b.s_b, b.s_h,
                       b.s_fb, b.s_fh, b.s_bh, b.total, sql(w, params), th});
        }
        target.write(t);
        return 0;
    }
    if (*c_adv) {
        const SpectrumMode mode = parse_mode(mode_arg);
        Table t;
        t.columns = {"omega_wm", "advantage_db", "theta_opt", "valid"};
        bool any_invalid = false;
        for (double w : omega_list()) {
            const OptimizationResult r =
                theta_opt_general(w, params, sq, mode, sopt);
            any_invalid |= !r.valid;
            t.add_row({w / params.omega_m, r.advantage_db, r.theta_opt,
                       r.valid ? 1.0 : 0.0});
        }
        if (any_invalid && !allow_fallback)
            throw ValidityError("closed-form optimum invalid on part of the "
                                "grid; pass --allow-fallback to emit "
                                "fallback rows");
        target.write(t);
        return 0;
    }
    if (*c_sens) {
        const SpectrumMode mode = parse_mode(mode_arg);
        Table t;
        t.columns = {"omega_wm", "sensitivity_theta0", "sensitivity_opt",
                     "theta_opt", "improvement_percent", "valid"};
        for (double w : omega_list()) {
            const OptimizationResult r =
                theta_opt_general(w, params, sq, mode, sopt);
            if (!r.valid && !allow_fallback)
                throw ValidityError("optimum invalid; pass --allow-fallback");
            const double s0 = sensitivity(w, params, sq, 0.0, mode, sopt);
            const double so = sensitivity(w, params, sq, r.theta_opt, mode, sopt);
            t.add_row({w / params.omega_m, s0, so, r.theta_opt,
                       100.0 * (1.0 - so / s0), r.valid ? 1.0 : 0.0});
        }
        target.write(t);
        return 0;
    }
    if (*c_signal) {
        Table t;
        t.columns = {"omega_wm", "r_c", "improvement", "theta"};
        for (double w : omega_list()) {
            const double th = resolve_theta_arg(theta_arg, w, params, sq,
                                                SpectrumMode::general, sopt,
                                                allow_fallback);
            t.add_row({w / params.omega_m,
                       signal_response(w, params, th, {false, false}),
                       signal_improvement(th, params.y), th});
        }
        target.write(t);
        return 0;
    }
    if (*c_bands) {
        const Range r = parse_range(window);
        std::vector<double> grid;
        for (int i = 0; i < r.points; ++i)
            grid.push_back((r.lo + (r.hi - r.lo) * i / (r.points - 1)) *
                           params.omega_m);
        auto value = [&](double w) {
            const double th = resolve_theta_arg(theta_arg, w, params, sq,
                                                SpectrumMode::general, sopt,
                                                true);
            return criterion == "rc"
                       ? signal_response(w, params, th, {false, false})
                       : signal_improvement(th, params.y);
        };
        const bool above = criterion == "rc";
        const auto bands =
            find_bands(value, grid, params.gamma_m, above,
                       criterion == "rc" ? "R_c>1" : "improvement<1");
        Table t;
        t.columns = {"lower_wm", "upper_wm", "center_wm", "bandwidth_gamma_m"};
        for (const auto& b : bands)
            t.add_row({b.lower / params.omega_m, b.upper / params.omega_m,
                       b.center / params.omega_m, b.bandwidth_gamma_m});
        target.write(t);
        return 0;
    }
    if (*c_nmin) {
        const double w = std::isnan(omega_offset)
                             ? params.omega_m + 4.0 * params.gamma_m
                             : params.omega_m + omega_offset * params.gamma_m;
        const NminResult r = n_min(w, params);
        Table t;
        t.columns = {"n_min", "threshold_found"};
        t.add_row({r.n_min, r.threshold_found ? 1.0 : 0.0});
        target.write(t);
        return 0;
    }
    if (*c_sweep) {
        std::ifstream in(spec_path);
        if (!in) throw ConfigError("cannot open sweep spec " + spec_path);
        std::stringstream buf;
        buf << in.rdbuf();
        const SweepSpec spec = parse_sweep_spec(buf.str());
        const Table t = run(spec);
        target.write(t);
        if (out_path != "-") {
            std::ofstream meta(out_path + ".meta.json");
            meta << sweep_metadata(spec) << "\n";
        } else {
            std::cerr << sweep_metadata(spec) << "\n";
        }
        return 0;
    }
    if (*c_fig) {
        const FigurePreset preset = figure_preset(figure_id);
        const Table t = run_curves(preset.specs);
        const std::string base = outdir + "/" + preset.id;
        {
            std::ofstream out(base + (format == "csv" ? ".csv" : ".jsonl"));
            if (!out) throw ConfigError("cannot write to " + base);
            if (format == "csv")
                write_csv(t, out);
            else
                write_jsonl(t, out);
        }
        {
            std::ofstream meta(base + ".meta.json");
            meta << preset_metadata(preset) << "\n";
        }
        if (svg) {
            std::ofstream chart(base + ".svg");
            chart << render_svg(t, preset.specs.front().axis1.name,
                                quantity_name(preset.specs.front().quantity),
                                "curve",
                                preset.specs.front().quantity ==
                                    Quantity::spectrum);
        }
        std::cerr << "wrote " << base << ".{csv,meta.json"
                  << (svg ? ",svg" : "") << "}\n";
        return 0;
    }
    if (*c_oracle) {
        const OracleCheck rep =
            oracle_check(params, draws, seed, 1e-9, tolerance);
        json j;
        j["draws"] = rep.draws;
        j["max_rel_err_flagged"] = rep.max_rel_err_flagged;
        j["max_rel_err_exact"] = rep.max_rel_err_exact;
        j["tolerance_flagged"] = rep.tol_flagged;
        j["tolerance_exact"] = rep.tol_exact;
        j["pass_flagged"] = rep.pass_flagged;
        j["pass_exact"] = rep.pass_exact;
        j["pass"] = rep.pass_flagged && rep.pass_exact;
        if (out_path == "-") {
            std::cout << j.dump(2) << "\n";
        } else {
            std::ofstream out(out_path);
            out << j.dump(2) << "\n";
        }
        return (rep.pass_flagged && rep.pass_exact) ? 0 : 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const cqnc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const cqnc::ValidityError& e) {
        std::cerr << "validity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

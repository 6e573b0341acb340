#include "cqnc/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cqnc/constants.hpp"
#include "cqnc/oracle.hpp"

namespace cqnc {

using nlohmann::json;

namespace {

const std::set<std::string> kAxisNames = {
    "omega", "power_g2", "y", "coupling_ratio", "decay_ratio", "n", "theta"};

std::vector<double> axis_values(const Axis& a) {
    std::vector<double> v;
    v.reserve(a.points);
    for (int i = 0; i < a.points; ++i) {
        const double f =
            a.points == 1 ? 0.0 : static_cast<double>(i) / (a.points - 1);
        if (a.log_scale)
            v.push_back(a.min * std::pow(a.max / a.min, f));
        else
            v.push_back(a.min + (a.max - a.min) * f);
    }
    return v;
}

struct Cell {
    RawConfig raw;
    SqueezingSpec squeezing;
    double omega_wm;
    double theta_fixed;
    double g_over_g0_override = -1;  // < 0: none
};

void apply_axis(Cell& c, const std::string& name, double v) {
    if (name == "omega")
        c.omega_wm = v;
    else if (name == "power_g2")
        c.g_over_g0_override = std::sqrt(v);
    else if (name == "y")
        c.raw.y = v;
    else if (name == "coupling_ratio")
        c.raw.coupling_ratio = v;
    else if (name == "decay_ratio")
        c.raw.decay_ratio = v;
    else if (name == "n")
        c.squeezing.n = v;
    else if (name == "theta")
        c.theta_fixed = v;
}

struct CellResult {
    double value = std::numeric_limits<double>::quiet_NaN();
    double theta = 0;
    double sql_value = std::numeric_limits<double>::quiet_NaN();
    bool valid = true;
};

CellResult evaluate(const SweepSpec& spec, const Cell& cell) {
    SystemParams p = derive(cell.raw);
    if (cell.g_over_g0_override > 0) {
        p.g = p.g0 * cell.g_over_g0_override;
        p.alpha_s = p.g / (2.0 * p.g0);
        p.pump_rate = p.alpha_s * p.kappa / 2.0;
        p.big_g = cell.raw.coupling_ratio * p.g;
    }
    const SqueezingState sq = cell.squeezing.resolve(p.y);
    const double omega = cell.omega_wm * p.omega_m;
    const SpectraOptions sopt{spec.approx_chi_a, spec.thermal};

    CellResult out;
    double theta = 0.0;
    switch (spec.theta_policy) {
        case ThetaPolicy::zero:
            theta = 0.0;
            break;
        case ThetaPolicy::fixed:
            theta = cell.theta_fixed;
            break;
        case ThetaPolicy::opt: {
            const OptimizationResult r =
                theta_opt_general(omega, p, sq, spec.mode, sopt);
            theta = r.theta_opt;
            out.valid = r.valid;
            break;
        }
        case ThetaPolicy::opt_oracle: {
            theta = theta_opt_pencil(omega, p, sq, spec.thermal).theta;
            break;
        }
    }
    out.theta = theta;

    switch (spec.quantity) {
        case Quantity::spectrum:
            out.value = breakdown(omega, p, sq, theta, spec.mode, sopt).total;
            out.sql_value = sql(omega, p);
            break;
        case Quantity::advantage_db: {
            double s0, st;
            if (spec.theta_policy == ThetaPolicy::opt_oracle) {
                s0 = psd_numeric(omega, p, sq, 0.0, false, spec.thermal);
                st = psd_numeric(omega, p, sq, theta, false, spec.thermal);
            } else {
                s0 = breakdown(omega, p, sq, 0.0, spec.mode, sopt).total;
                st = breakdown(omega, p, sq, theta, spec.mode, sopt).total;
            }
            out.value = (st > 0 && s0 > 0) ? -10.0 * std::log10(st / s0) : 0.0;
            if (st <= 0) out.valid = false;
            break;
        }
        case Quantity::sensitivity:
            out.value = sensitivity(omega, p, sq, theta, spec.mode, sopt);
            break;
        case Quantity::r_c:
            out.value = signal_response(
                omega, p, theta,
                {false, spec.mode == SpectrumMode::perfect_enforced});
            break;
        case Quantity::improvement:
            out.value = signal_improvement(theta, p.y);
            break;
    }
    return out;
}

int thread_count() {
    if (const char* env = std::getenv("CQNC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 2;
}

}  // namespace

void SweepSpec::validate() const {
    auto check_axis = [](const Axis& a) {
        if (!kAxisNames.count(a.name)) {
            std::string names;
            for (const auto& n : kAxisNames) names += n + " ";
            throw ConfigError("unknown axis '" + a.name +
                              "'; valid axes: " + names);
        }
        if (a.points < 2) throw ConfigError("axis needs at least 2 points");
        if (!(a.min < a.max)) throw ConfigError("axis requires min < max");
        if (a.log_scale && a.min <= 0)
            throw ConfigError("log axis requires positive min");
    };
    check_axis(axis1);
    if (axis2) check_axis(*axis2);
    fixed.raw.validate();
}

Table run(const SweepSpec& spec) {
    return run_curves({spec});
}

Table run_curves(const std::vector<SweepSpec>& specs) {
    if (specs.empty()) throw ConfigError("no sweep curves given");
    for (const auto& s : specs) s.validate();
    const SweepSpec& first = specs.front();

    Table t;
    t.columns = {"curve", first.axis1.name};
    if (first.axis2) t.columns.push_back(first.axis2->name);
    t.columns.push_back(quantity_name(first.quantity));
    if (first.quantity == Quantity::spectrum) t.columns.push_back("sql");
    t.columns.push_back("theta");
    t.columns.push_back("valid");

    struct Job {
        const SweepSpec* spec;
        double v1, v2;
        bool has2;
    };
    std::vector<Job> jobs;
    for (const auto& s : specs) {
        const auto v1s = axis_values(s.axis1);
        if (s.axis2) {
            const auto v2s = axis_values(*s.axis2);
            for (double v1 : v1s)
                for (double v2 : v2s) jobs.push_back({&s, v1, v2, true});
        } else {
            for (double v1 : v1s) jobs.push_back({&s, v1, 0.0, false});
        }
    }

    std::vector<CellResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            const Job& job = jobs[i];
            Cell cell{job.spec->fixed.raw, job.spec->fixed.squeezing,
                      job.spec->omega_wm, job.spec->theta_fixed, -1};
            apply_axis(cell, job.spec->axis1.name, job.v1);
            if (job.has2) apply_axis(cell, job.spec->axis2->name, job.v2);
            try {
                results[i] = evaluate(*job.spec, cell);
            } catch (const std::exception&) {
                results[i] = CellResult{};
                results[i].valid = false;
            }
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(thread_count(),
                                        static_cast<int>(jobs.size()));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job& job = jobs[i];
        std::vector<double> row;
        row.push_back(job.spec->curve_index);
        row.push_back(job.v1);
        if (first.axis2) row.push_back(job.v2);
        row.push_back(results[i].value);
        if (first.quantity == Quantity::spectrum)
            row.push_back(results[i].sql_value);
        row.push_back(results[i].theta);
        row.push_back(results[i].valid ? 1.0 : 0.0);
        t.add_row(std::move(row));
    }
    return t;
}

std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::spectrum: return "spectrum";
        case Quantity::advantage_db: return "advantage_db";
        case Quantity::sensitivity: return "sensitivity";
        case Quantity::r_c: return "r_c";
        case Quantity::improvement: return "improvement";
    }
    return "?";
}

namespace {

Config base_config() {
    Config cfg;  // defaults already carry the reference sensor parameters
    cfg.squeezing.n = 10.0;
    cfg.squeezing.policy = PhasePolicy::paper;
    return cfg;
}

SweepSpec omega_sweep(double lo, double hi, int pts) {
    SweepSpec s;
    s.axis1 = {"omega", lo, hi, pts, false};
    s.fixed = base_config();
    return s;
}

SweepSpec power_sweep() {
    SweepSpec s;
    s.axis1 = {"power_g2", 1.0, 3e7, 241, true};
    s.fixed = base_config();
    s.omega_wm = 1.0 + 4e-7;  // omega_m + 4 gamma_m
    return s;
}

void push(FigurePreset& f, SweepSpec s, const std::string& label) {
    s.curve_index = static_cast<int>(f.specs.size());
    f.specs.push_back(std::move(s));
    f.curve_labels.push_back(label);
}

}  // namespace

std::vector<std::string> known_figures() {
    return {"fig2",  "fig2_1", "fig3",  "fig4",  "fig5",  "fig6",
            "fig7",  "fig8",   "fig9",  "fig10", "fig11", "fig13",
            "fig14", "fig15",  "fig16a", "fig16b", "fig17"};
}

FigurePreset figure_preset(const std::string& id) {
    FigurePreset f;
    f.id = id;

    if (id == "fig2") {
        f.note = "matched-system force noise vs frequency, N=10";
        for (double y : {0.5, 1.0})
            for (auto pol : {ThetaPolicy::zero, ThetaPolicy::opt}) {
                SweepSpec s = omega_sweep(0.9, 1.1, 1201);
                s.mode = SpectrumMode::perfect_enforced;
                s.quantity = Quantity::spectrum;
                s.fixed.raw.y = y;
                s.theta_policy = pol;
                push(f, s,
                     "y=" + std::to_string(y) +
                         (pol == ThetaPolicy::zero ? " theta=0" : " theta=opt"));
            }
        return f;
    }
    if (id == "fig2_1" || id == "fig3") {
        f.note = id == "fig2_1"
                     ? "noise-reduction advantage vs frequency by detuning"
                     : "noise-reduction advantage vs frequency by squeezing";
        const std::vector<double> ys =
            id == "fig2_1" ? std::vector<double>{0.0, 0.5, 1.0}
                           : std::vector<double>{0.5};
        const std::vector<double> ns =
            id == "fig2_1" ? std::vector<double>{10.0}
                           : std::vector<double>{0.0, 5.0, 15.0, 25.0};
        for (double y : ys)
            for (double n : ns) {
                SweepSpec s = omega_sweep(0.9, 1.1, 801);
                s.mode = SpectrumMode::perfect_enforced;
                s.quantity = Quantity::advantage_db;
                s.theta_policy = ThetaPolicy::opt;
                s.fixed.raw.y = y;
                s.fixed.squeezing.n = n;
                push(f, s, "y=" + std::to_string(y) + " N=" + std::to_string(n));
            }
        return f;
    }
    if (id == "fig4" || id == "fig5") {
        f.note = "matched system vs drive power at omega_m + 4 gamma_m, y=1/2";
        for (double n : {0.0, 5.0, 15.0, 25.0}) {
            if (id == "fig4") {
                for (auto pol : {ThetaPolicy::opt, ThetaPolicy::zero}) {
                    SweepSpec s = power_sweep();
                    s.mode = SpectrumMode::perfect_enforced;
                    s.quantity = Quantity::spectrum;
                    s.fixed.raw.y = 0.5;
                    s.fixed.squeezing.n = n;
                    s.theta_policy = pol;
                    push(f, s, "N=" + std::to_string(n) +
                                   (pol == ThetaPolicy::zero ? " theta=0"
                                                             : " theta=opt"));
                }
            } else {
                SweepSpec s = power_sweep();
                s.mode = SpectrumMode::perfect_enforced;
                s.quantity = Quantity::advantage_db;
                s.fixed.raw.y = 0.5;
                s.fixed.squeezing.n = n;
                s.theta_policy = ThetaPolicy::opt;
                push(f, s, "N=" + std::to_string(n));
            }
        }
        return f;
    }
    if (id == "fig6") {
        f.note = "resonant drive with mismatch, N=0.2, phi=0";
        for (auto pol : {ThetaPolicy::zero, ThetaPolicy::opt}) {
            SweepSpec s = omega_sweep(0.9, 1.1, 1201);
            s.quantity = Quantity::spectrum;
            s.fixed.raw.y = 0.0;
            s.fixed.raw.coupling_ratio = 1.001;
            s.fixed.raw.decay_ratio = 0.8;
            s.fixed.squeezing.n = 0.2;
            s.fixed.squeezing.policy = PhasePolicy::fixed;
            s.theta_policy = pol;
            push(f, s, pol == ThetaPolicy::zero ? "theta=0" : "theta=opt");
        }
        SweepSpec ref = omega_sweep(0.9, 1.1, 1201);
        ref.mode = SpectrumMode::perfect_enforced;
        ref.quantity = Quantity::spectrum;
        ref.fixed.raw.y = 0.0;
        ref.fixed.squeezing.n = 0.2;
        ref.fixed.squeezing.policy = PhasePolicy::fixed;
        push(f, ref, "matched reference");
        return f;
    }
    if (id == "fig7") {
        f.note = "advantage vs coupling and decay mismatch, N=0.126";
        SweepSpec s;
        s.axis1 = {"coupling_ratio", 0.98, 1.02, 41, false};
        s.axis2 = Axis{"decay_ratio", 0.96, 1.04, 41, false};
        s.fixed = base_config();
        s.fixed.squeezing.n = 0.126;
        s.fixed.squeezing.policy = PhasePolicy::fixed;
        s.quantity = Quantity::advantage_db;
        s.theta_policy = ThetaPolicy::opt;
        s.omega_wm = 1.0 - 4e-7;
        push(f, s, "advantage map");
        return f;
    }
    if (id == "fig8") {
        f.note = "advantage vs squeezing and decay mismatch, 2% coupling "
                 "mismatch";
        SweepSpec s;
        s.axis1 = {"n", 0.05, 1.0, 96, false};
        s.axis2 = Axis{"decay_ratio", 0.95, 1.08, 53, false};
        s.fixed = base_config();
        s.fixed.raw.coupling_ratio = 1.02;
        s.fixed.squeezing.policy = PhasePolicy::fixed;
        s.quantity = Quantity::advantage_db;
        s.theta_policy = ThetaPolicy::opt;
        s.omega_wm = 1.0 - 4e-7;
        push(f, s, "advantage map");
        return f;
    }
    if (id == "fig9" || id == "fig10") {
        f.note = "resonant drive vs power at omega_m + 4 gamma_m, N=0.1245";
        const std::vector<std::pair<double, double>> mm =
            id == "fig9"
                ? std::vector<std::pair<double, double>>{{1.0, 1.1},
                                                         {1.01, 1.1},
                                                         {1.1, 0.9},
                                                         {1.2, 0.9}}
                : std::vector<std::pair<double, double>>{{1.0, 1.1},
                                                         {1.01, 1.1},
                                                         {1.05, 1.0},
                                                         {1.1, 1.0},
                                                         {1.1, 1.1},
                                                         {1.2, 0.9}};
        for (auto [cr, dr] : mm) {
            const auto pols = id == "fig9"
                                  ? std::vector<ThetaPolicy>{ThetaPolicy::opt,
                                                             ThetaPolicy::zero}
                                  : std::vector<ThetaPolicy>{ThetaPolicy::opt};
            for (auto pol : pols) {
                SweepSpec s = power_sweep();
                s.quantity = id == "fig9" ? Quantity::spectrum
                                          : Quantity::advantage_db;
                s.fixed.raw.y = 0.0;
                s.fixed.raw.coupling_ratio = cr;
                s.fixed.raw.decay_ratio = dr;
                s.fixed.squeezing.n = 0.1245;
                s.fixed.squeezing.policy = PhasePolicy::fixed;
                s.theta_policy = pol;
                push(f, s, "G/g=" + std::to_string(cr) +
                               " Gam/gam=" + std::to_string(dr) +
                               (pol == ThetaPolicy::zero ? " theta=0"
                                                         : " theta=opt"));
            }
        }
        return f;
    }
    if (id == "fig11") {
        f.note = "off-resonant drive with tiny coupling mismatch, N=1";
        for (auto pol : {ThetaPolicy::zero, ThetaPolicy::opt_oracle}) {
            SweepSpec s = omega_sweep(0.9, 1.1, 1201);
            s.quantity = Quantity::spectrum;
            s.fixed.raw.y = 1.0;
            s.fixed.raw.coupling_ratio = 1.00001;
            s.fixed.squeezing.n = 1.0;
            s.theta_policy = pol;
            push(f, s, pol == ThetaPolicy::zero ? "theta=0" : "theta=opt");
        }
        return f;
    }
    if (id == "fig13") {
        f.note = "advantage vs coupling mismatch and squeezing, off-resonant";
        SweepSpec s;
        s.axis1 = {"coupling_ratio", 0.995, 1.03, 36, false};
        s.axis2 = Axis{"n", 1.0, 25.0, 25, false};
        s.fixed = base_config();
        s.fixed.raw.y = 1.0;
        s.fixed.raw.decay_ratio = 1.2;
        s.quantity = Quantity::advantage_db;
        s.theta_policy = ThetaPolicy::opt;
        s.omega_wm = 1.0 - 4e-7;
        push(f, s, "advantage map");
        return f;
    }
    if (id == "fig14" || id == "fig15") {
        f.note = "off-resonant drive vs power at omega_m - 4 gamma_m, N=20";
        const std::vector<std::pair<double, double>> mm =
            id == "fig14"
                ? std::vector<std::pair<double, double>>{{1.05, 1.1},
                                                         {1.1, 1.15},
                                                         {1.15, 1.2}}
                : std::vector<std::pair<double, double>>{{1.05, 1.1},
                                                         {0.95, 0.9},
                                                         {1.1, 1.2},
                                                         {0.9, 0.8},
                                                         {1.2, 1.3}};
        for (auto [cr, dr] : mm) {
            const auto pols = id == "fig14"
                                  ? std::vector<ThetaPolicy>{ThetaPolicy::opt,
                                                             ThetaPolicy::zero}
                                  : std::vector<ThetaPolicy>{ThetaPolicy::opt};
            for (auto pol : pols) {
                SweepSpec s = power_sweep();
                s.omega_wm = 1.0 - 4e-7;
                s.quantity = id == "fig14" ? Quantity::spectrum
                                           : Quantity::advantage_db;
                s.fixed.raw.y = 1.0;
                s.fixed.raw.coupling_ratio = cr;
                s.fixed.raw.decay_ratio = dr;
                s.fixed.squeezing.n = 20.0;
                s.theta_policy = pol;
                push(f, s, "G/g=" + std::to_string(cr) +
                               " Gam/gam=" + std::to_string(dr) +
                               (pol == ThetaPolicy::zero ? " theta=0"
                                                         : " theta=opt"));
            }
        }
        return f;
    }
    if (id == "fig16a" || id == "fig16b") {
        f.note = "signal-response power vs frequency";
        for (double y : {0.0, 1.0})
            for (auto pol : {ThetaPolicy::zero, ThetaPolicy::opt_oracle}) {
                SweepSpec s = omega_sweep(0.99, 1.01, 2001);
                s.quantity = Quantity::r_c;
                s.fixed.raw.y = y;
                if (id == "fig16b") {
                    s.fixed.raw.coupling_ratio = 1.0001;
                    s.fixed.raw.decay_ratio = 1.01;
                }
                s.theta_policy = pol;
                push(f, s, "y=" + std::to_string(y) +
                               (pol == ThetaPolicy::zero ? " theta=0"
                                                         : " theta=opt"));
            }
        return f;
    }
    if (id == "fig17") {
        f.note = "signal improvement vs frequency, tiny coupling mismatch";
        for (double y : {0.0, 1.0}) {
            SweepSpec s = omega_sweep(0.99, 1.01, 2001);
            s.quantity = Quantity::improvement;
            s.fixed.raw.y = y;
            s.fixed.raw.coupling_ratio = 1.00001;
            s.fixed.raw.decay_ratio = 1.1;
            s.theta_policy = ThetaPolicy::opt;
            push(f, s, "y=" + std::to_string(y));
        }
        return f;
    }

    std::string valid;
    for (const auto& k : known_figures()) valid += k + " ";
    throw ConfigError("unknown figure id '" + id + "'; valid ids: " + valid);
}

namespace {

json axis_json(const Axis& a) {
    return {{"name", a.name},
            {"min", a.min},
            {"max", a.max},
            {"points", a.points},
            {"scale", a.log_scale ? "log" : "linear"}};
}

json spec_json(const SweepSpec& s) {
    json j;
    j["axis1"] = axis_json(s.axis1);
    if (s.axis2) j["axis2"] = axis_json(*s.axis2);
    j["quantity"] = quantity_name(s.quantity);
    switch (s.theta_policy) {
        case ThetaPolicy::zero: j["theta_policy"] = "zero"; break;
        case ThetaPolicy::opt: j["theta_policy"] = "opt"; break;
        case ThetaPolicy::opt_oracle: j["theta_policy"] = "opt-oracle"; break;
        case ThetaPolicy::fixed: j["theta_policy"] = s.theta_fixed; break;
    }
    j["mode"] = s.mode == SpectrumMode::perfect_enforced ? "perfect" : "general";
    j["approx_chi_a"] = s.approx_chi_a;
    j["thermal"] = s.thermal == ThermalModel::exact_occupation ? "exact" : "high-t";
    j["omega_wm"] = s.omega_wm;
    j["curve"] = s.curve_index;
    j["config"] = json::parse(config_to_json(s.fixed));
    return j;
}

}  // namespace

std::string sweep_metadata(const SweepSpec& spec) {
    json j;
    j["artifact_version"] = constants::version;
    j["spec"] = spec_json(spec);
    return j.dump(2);
}

std::string preset_metadata(const FigurePreset& preset) {
    json j;
    j["artifact_version"] = constants::version;
    j["figure"] = preset.id;
    j["note"] = preset.note;
    j["curves"] = json::array();
    for (std::size_t i = 0; i < preset.specs.size(); ++i) {
        json c = spec_json(preset.specs[i]);
        c["label"] = preset.curve_labels[i];
        j["curves"].push_back(c);
    }
    return j.dump(2);
}

SweepSpec parse_sweep_spec(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed sweep JSON: ") + e.what());
    }
    auto parse_axis = [](const json& j) {
        Axis a;
        a.name = j.at("name").get<std::string>();
        a.min = j.at("min").get<double>();
        a.max = j.at("max").get<double>();
        a.points = j.at("points").get<int>();
        if (j.contains("scale"))
            a.log_scale = j.at("scale").get<std::string>() == "log";
        return a;
    };
    SweepSpec s;
    s.axis1 = parse_axis(root.at("axis1"));
    if (root.contains("axis2")) s.axis2 = parse_axis(root.at("axis2"));
    const std::string q = root.value("quantity", "spectrum");
    if (q == "spectrum") s.quantity = Quantity::spectrum;
    else if (q == "advantage_db") s.quantity = Quantity::advantage_db;
    else if (q == "sensitivity") s.quantity = Quantity::sensitivity;
    else if (q == "r_c") s.quantity = Quantity::r_c;
    else if (q == "improvement") s.quantity = Quantity::improvement;
    else throw ConfigError("unknown quantity '" + q + "'");
    if (root.contains("theta_policy")) {
        const json& tp = root.at("theta_policy");
        if (tp.is_number()) {
            s.theta_policy = ThetaPolicy::fixed;
            s.theta_fixed = tp.get<double>();
        } else {
            const std::string v = tp.get<std::string>();
            if (v == "zero") s.theta_policy = ThetaPolicy::zero;
            else if (v == "opt") s.theta_policy = ThetaPolicy::opt;
            else if (v == "opt-oracle") s.theta_policy = ThetaPolicy::opt_oracle;
            else throw ConfigError("unknown theta_policy '" + v + "'");
        }
    }
    if (root.contains("mode"))
        s.mode = root.at("mode").get<std::string>() == "perfect"
                     ? SpectrumMode::perfect_enforced
                     : SpectrumMode::general;
    s.approx_chi_a = root.value("approx_chi_a", true);
    s.omega_wm = root.value("omega_wm", 1.0);
    if (root.contains("config"))
        s.fixed = parse_config(root.at("config").dump());
    s.validate();
    return s;
}

}  // namespace cqnc

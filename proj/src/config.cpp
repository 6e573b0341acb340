#include "cqnc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cqnc {

using nlohmann::json;

SqueezingState SqueezingSpec::resolve(double y) const {
    double phi = phase_rad;
    if (policy == PhasePolicy::sigma_min) phi = phi_opt(y, n);
    if (policy == PhasePolicy::paper) phi = phi_opt_paper(y);
    if (pure) return SqueezingState::pure(n, phi);
    return {n, {0.0, 0.0}};
}

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

double num(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number())
        throw ConfigError("key '" + key + "' must be a number");
    return obj.at(key).get<double>();
}

}  // namespace

Config parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");

    static const std::set<std::string> top_keys = {
        "omega_m_hz", "gamma_m_hz", "kappa_hz",      "g0_hz",
        "lambda_nm",  "power_uw",   "mass_kg",       "temperature_k",
        "y",          "coupling_ratio", "decay_ratio", "squeezing"};
    check_keys(root, top_keys, "config");

    Config cfg;
    RawConfig defaults;
    cfg.raw.omega_m_hz = num(root, "omega_m_hz", defaults.omega_m_hz);
    cfg.raw.gamma_m_hz = num(root, "gamma_m_hz", defaults.gamma_m_hz);
    cfg.raw.kappa_hz = num(root, "kappa_hz", defaults.kappa_hz);
    cfg.raw.g0_hz = num(root, "g0_hz", defaults.g0_hz);
    cfg.raw.lambda_nm = num(root, "lambda_nm", defaults.lambda_nm);
    cfg.raw.power_uw = num(root, "power_uw", defaults.power_uw);
    cfg.raw.mass_kg = num(root, "mass_kg", defaults.mass_kg);
    cfg.raw.temperature_k = num(root, "temperature_k", defaults.temperature_k);
    cfg.raw.y = num(root, "y", defaults.y);
    cfg.raw.coupling_ratio = num(root, "coupling_ratio", defaults.coupling_ratio);
    cfg.raw.decay_ratio = num(root, "decay_ratio", defaults.decay_ratio);
    cfg.raw.validate();

    if (root.contains("squeezing")) {
        const json& sq = root.at("squeezing");
        if (!sq.is_object()) throw ConfigError("'squeezing' must be an object");
        check_keys(sq, {"n", "phase_rad", "pure"}, "squeezing");
        cfg.squeezing.n = num(sq, "n", 0.0);
        if (cfg.squeezing.n < 0) throw ConfigError("squeezing.n must be >= 0");
        if (cfg.squeezing.n > SqueezingState::n_max)
            throw ConfigError("squeezing.n exceeds the ceiling of 25");
        if (sq.contains("phase_rad")) {
            const json& ph = sq.at("phase_rad");
            if (ph.is_number()) {
                cfg.squeezing.policy = PhasePolicy::fixed;
                cfg.squeezing.phase_rad = ph.get<double>();
            } else if (ph.is_string()) {
                const std::string s = ph.get<std::string>();
                if (s == "opt")
                    cfg.squeezing.policy = PhasePolicy::sigma_min;
                else if (s == "opt-paper")
                    cfg.squeezing.policy = PhasePolicy::paper;
                else
                    throw ConfigError("squeezing.phase_rad string must be "
                                      "\"opt\" or \"opt-paper\"");
            } else {
                throw ConfigError("squeezing.phase_rad must be a number or "
                                  "\"opt\"/\"opt-paper\"");
            }
        }
        if (sq.contains("pure")) {
            if (!sq.at("pure").is_boolean())
                throw ConfigError("squeezing.pure must be a boolean");
            cfg.squeezing.pure = sq.at("pure").get<bool>();
        }
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_to_json(const Config& cfg) {
    json root;
    root["omega_m_hz"] = cfg.raw.omega_m_hz;
    root["gamma_m_hz"] = cfg.raw.gamma_m_hz;
    root["kappa_hz"] = cfg.raw.kappa_hz;
    root["g0_hz"] = cfg.raw.g0_hz;
    root["lambda_nm"] = cfg.raw.lambda_nm;
    root["power_uw"] = cfg.raw.power_uw;
    root["mass_kg"] = cfg.raw.mass_kg;
    root["temperature_k"] = cfg.raw.temperature_k;
    root["y"] = cfg.raw.y;
    root["coupling_ratio"] = cfg.raw.coupling_ratio;
    root["decay_ratio"] = cfg.raw.decay_ratio;
    json sq;
    sq["n"] = cfg.squeezing.n;
    switch (cfg.squeezing.policy) {
        case PhasePolicy::fixed: sq["phase_rad"] = cfg.squeezing.phase_rad; break;
        case PhasePolicy::sigma_min: sq["phase_rad"] = "opt"; break;
        case PhasePolicy::paper: sq["phase_rad"] = "opt-paper"; break;
    }
    sq["pure"] = cfg.squeezing.pure;
    root["squeezing"] = sq;
    return root.dump(2);
}

}  // namespace cqnc

#pragma once

#include <optional>
#include <string>

#include "cqnc/params.hpp"

namespace cqnc {

// How the squeezing phase is resolved when the config says "opt".
enum class PhasePolicy {
    fixed,      // phase_rad given numerically
    sigma_min,  // "opt": stationarity angle, Sigma-minimizing branch
    paper,      // "opt-paper": the published-figure convention
};

struct SqueezingSpec {
    double n = 0.0;
    PhasePolicy policy = PhasePolicy::fixed;
    double phase_rad = 0.0;  // used when policy == fixed
    bool pure = true;        // pure squeezing |M| = sqrt(N(N+1)); else M = 0

    SqueezingState resolve(double y) const;
};

struct Config {
    RawConfig raw;
    SqueezingSpec squeezing;
};

// Strict parser: any unrecognized key is an error.
Config parse_config(const std::string& json_text);
Config load_config(const std::string& path);
std::string config_to_json(const Config& cfg);

}  // namespace cqnc

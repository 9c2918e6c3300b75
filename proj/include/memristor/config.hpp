#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "memristor/defaults.hpp"
#include "memristor/fluxq.hpp"
#include "memristor/model.hpp"
#include "memristor/sweep.hpp"

namespace memristor {

struct OutputPaths {
    std::optional<std::string> report;
    std::optional<std::string> trace;
    std::optional<std::string> fq;
    std::optional<std::string> plot_prefix;
};

/// Everything one CLI run needs. Built from the family defaults and then
/// overridden by a config file and command-line flags.
struct RunConfig {
    Family family = Family::StrukovTiO2;
    /// Family defaults the run started from; read and bench settings come from here.
    FamilyDefaults settings;
    BenchDefaults bench;
    Tolerances tolerances;
    double phi0 = 0.0;
    double q0 = 0.0;
    OutputPaths output;

    void validate() const;
};

RunConfig default_config(Family f);

/// Strict parse: unknown keys raise ConfigError naming the key.
/// `family_override` replaces the config's family when given.
RunConfig parse_config(const nlohmann::json& j, std::optional<Family> family_override = std::nullopt);
RunConfig load_config(const std::string& path, std::optional<Family> family_override = std::nullopt);

/// Applies one `KEY=VALUE` tolerance override (eps_hys, r_tol, m_tol, v_eps,
/// dq_tol, i_origin_tol, iv_tol, filter_window).
void apply_tolerance_override(Tolerances& tol, const std::string& assignment);

/// Throws ConfigError unless every tolerance is positive.
void validate_tolerances(const Tolerances& tol);

/// Echo of the effective configuration with a stable key order.
nlohmann::ordered_json config_echo(const RunConfig& cfg);

}  // namespace memristor

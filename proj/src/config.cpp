#include "memristor/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "memristor/error.hpp"

namespace memristor {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            throw ConfigError("unknown config key '" + where + "." + it.key() + "'");
        }
    }
}

template <class T>
void read_if(const json& j, const char* key, T& target) {
    if (j.contains(key)) target = j.at(key).get<T>();
}

void require_positive(double x, const std::string& name) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(name + " must be positive");
}

}  // namespace

RunConfig default_config(Family f) {
    RunConfig c;
    c.family = f;
    c.settings = family_defaults(f);
    c.bench = bench_defaults();
    return c;
}

void validate_tolerances(const Tolerances& t) {
    require_positive(t.eps_hys, "eps_hys");
    require_positive(t.r_tol, "r_tol");
    require_positive(t.m_tol, "m_tol");
    require_positive(t.v_eps, "v_eps");
    require_positive(t.dq_tol, "dq_tol");
    require_positive(t.i_origin_tol, "i_origin_tol");
    require_positive(t.iv_tol, "iv_tol");
    if (t.filter_window < 1) throw ConfigError("filter_window must be >= 1");
}

void RunConfig::validate() const {
    settings.params.validate();
    if (settings.params.family != family) throw ConfigError("parameter set does not match the model family");
    if (settings.initial_state.size() != state_dimension(family)) {
        throw ConfigError("initial_state must have " + std::to_string(state_dimension(family)) + " entries");
    }
    if (!settings.initial_state.within_bounds()) throw ConfigError("initial_state outside [0, 1]");
    const SweepSpec& s = settings.sweep;
    require_positive(s.v_max_pos, "sweep.v_max_pos");
    require_positive(s.v_max_neg, "sweep.v_max_neg");
    require_positive(s.period, "sweep.period");
    require_positive(s.dt, "sweep.dt");
    if (s.cycles < 1) throw ConfigError("sweep.cycles must be >= 1");
    if (s.period < 4.0 * s.dt) throw ConfigError("sweep.period must span at least 4 steps");
    validate_sweep_amplitude(settings.params, s.v_max_pos, s.v_max_neg);
    if (settings.init) {
        if (!std::isfinite(settings.init->v_init)) throw ConfigError("initialization.v_init must be finite");
        if (settings.init->duration < 0.0) throw ConfigError("initialization.duration must be >= 0");
    }
    require_positive(settings.read_v, "read.read_v");
    require_positive(settings.read_pulse, "read.read_pulse");
    if (bench.endurance_cycles < 3) throw ConfigError("bench.endurance_cycles must be >= 3");
    require_positive(bench.retention_horizon, "bench.retention_horizon");
    if (bench.n_reads < 1) throw ConfigError("bench.n_reads must be >= 1");
    validate_tolerances(tolerances);
    if (!std::isfinite(phi0) || !std::isfinite(q0)) throw ConfigError("phi0 and q0 must be finite");
}

RunConfig parse_config(const json& j, std::optional<Family> family_override) {
    try {
        reject_unknown(j, {"model", "sweep", "initialization", "read", "analysis", "bench", "output"}, "config");
        std::optional<Family> family = family_override;
        const json empty = json::object();
        const json& model = j.contains("model") ? j.at("model") : empty;
        reject_unknown(model, {"family", "params", "initial_state"}, "model");
        if (!family) {
            if (!model.contains("family")) throw ConfigError("model.family is required");
            family = parse_family(model.at("family").get<std::string>());
        }
        RunConfig c = default_config(*family);

        if (model.contains("params")) {
            const json& p = model.at("params");
            if (!p.is_object()) throw ConfigError("model.params must be an object");
            for (auto it = p.begin(); it != p.end(); ++it) {
                const auto fields = param_fields(*family);
                const bool known = std::any_of(fields.begin(), fields.end(),
                                               [&](const ParamField& f) { return f.name == it.key(); });
                if (!known) {
                    throw ConfigError("unknown config key 'model.params." + it.key() + "' for family " +
                                      std::string(family_key(*family)));
                }
                set_param(c.settings.params, it.key(), it.value().get<double>());
            }
        }
        if (model.contains("initial_state")) {
            c.settings.initial_state = DeviceState(model.at("initial_state").get<std::vector<double>>());
        }

        if (j.contains("sweep")) {
            const json& s = j.at("sweep");
            reject_unknown(s, {"v_max_pos", "v_max_neg", "period", "cycles", "dt"}, "sweep");
            read_if(s, "v_max_pos", c.settings.sweep.v_max_pos);
            read_if(s, "v_max_neg", c.settings.sweep.v_max_neg);
            read_if(s, "period", c.settings.sweep.period);
            read_if(s, "cycles", c.settings.sweep.cycles);
            read_if(s, "dt", c.settings.sweep.dt);
        }
        if (j.contains("initialization")) {
            const json& in = j.at("initialization");
            if (in.is_null()) {
                c.settings.init.reset();
            } else {
                reject_unknown(in, {"v_init", "duration"}, "initialization");
                InitSpec spec = c.settings.init.value_or(InitSpec{});
                read_if(in, "v_init", spec.v_init);
                read_if(in, "duration", spec.duration);
                c.settings.init = spec;
            }
        }
        if (j.contains("read")) {
            const json& r = j.at("read");
            reject_unknown(r, {"read_v", "read_pulse", "read_on_branch_polarity"}, "read");
            read_if(r, "read_v", c.settings.read_v);
            read_if(r, "read_pulse", c.settings.read_pulse);
            read_if(r, "read_on_branch_polarity", c.settings.read_on_branch_polarity);
        }
        if (j.contains("analysis")) {
            const json& a = j.at("analysis");
            reject_unknown(a, {"eps_hys", "r_tol", "m_tol", "v_eps", "dq_tol", "i_origin_tol", "iv_tol",
                               "filter_window", "phi0", "q0"},
                           "analysis");
            read_if(a, "eps_hys", c.tolerances.eps_hys);
            read_if(a, "r_tol", c.tolerances.r_tol);
            read_if(a, "m_tol", c.tolerances.m_tol);
            read_if(a, "v_eps", c.tolerances.v_eps);
            read_if(a, "dq_tol", c.tolerances.dq_tol);
            read_if(a, "i_origin_tol", c.tolerances.i_origin_tol);
            read_if(a, "iv_tol", c.tolerances.iv_tol);
            read_if(a, "filter_window", c.tolerances.filter_window);
            read_if(a, "phi0", c.phi0);
            read_if(a, "q0", c.q0);
        }
        if (j.contains("bench")) {
            const json& b = j.at("bench");
            reject_unknown(b, {"endurance_cycles", "retention_horizon", "n_reads"}, "bench");
            read_if(b, "endurance_cycles", c.bench.endurance_cycles);
            read_if(b, "retention_horizon", c.bench.retention_horizon);
            read_if(b, "n_reads", c.bench.n_reads);
        }
        if (j.contains("output")) {
            const json& o = j.at("output");
            reject_unknown(o, {"report", "trace", "fq", "plot_prefix"}, "output");
            auto path = [&](const char* key, std::optional<std::string>& target) {
                if (o.contains(key)) target = o.at(key).get<std::string>();
            };
            path("report", c.output.report);
            path("trace", c.output.trace);
            path("fq", c.output.fq);
            path("plot_prefix", c.output.plot_prefix);
        }
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

RunConfig load_config(const std::string& path, std::optional<Family> family_override) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    return parse_config(j, family_override);
}

void apply_tolerance_override(Tolerances& tol, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("tolerance override must look like KEY=VALUE: " + assignment);
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError("tolerance override " + key + ": invalid number '" + text + "'");
    }
    if (key == "eps_hys") tol.eps_hys = value;
    else if (key == "r_tol") tol.r_tol = value;
    else if (key == "m_tol") tol.m_tol = value;
    else if (key == "v_eps") tol.v_eps = value;
    else if (key == "dq_tol") tol.dq_tol = value;
    else if (key == "i_origin_tol") tol.i_origin_tol = value;
    else if (key == "iv_tol") tol.iv_tol = value;
    else if (key == "filter_window") {
        if (value != std::floor(value)) throw ConfigError("filter_window must be an integer");
        tol.filter_window = static_cast<int>(value);
    } else {
        throw ConfigError("unknown tolerance '" + key + "'");
    }
    validate_tolerances(tol);
}

ordered_json config_echo(const RunConfig& c) {
    ordered_json j;
    j["model"]["family"] = family_key(c.family);
    ordered_json params = ordered_json::object();
    for (const auto& f : param_fields(c.family)) params[std::string(f.name)] = get_param(c.settings.params, f.name);
    j["model"]["params"] = params;
    j["model"]["initial_state"] = std::vector<double>(c.settings.initial_state.values().begin(),
                                                      c.settings.initial_state.values().end());
    const SweepSpec& s = c.settings.sweep;
    j["sweep"] = {{"v_max_pos", s.v_max_pos}, {"v_max_neg", s.v_max_neg}, {"period", s.period},
                  {"cycles", s.cycles}, {"dt", s.dt}};
    if (c.settings.init) {
        j["initialization"] = {{"v_init", c.settings.init->v_init}, {"duration", c.settings.init->duration}};
    } else {
        j["initialization"] = nullptr;
    }
    j["read"] = {{"read_v", c.settings.read_v},
                 {"read_pulse", c.settings.read_pulse},
                 {"read_on_branch_polarity", c.settings.read_on_branch_polarity}};
    const Tolerances& t = c.tolerances;
    j["analysis"] = {{"eps_hys", t.eps_hys}, {"r_tol", t.r_tol},     {"m_tol", t.m_tol},
                     {"v_eps", t.v_eps},     {"dq_tol", t.dq_tol},   {"i_origin_tol", t.i_origin_tol},
                     {"iv_tol", t.iv_tol},   {"filter_window", t.filter_window},
                     {"phi0", c.phi0},       {"q0", c.q0}};
    j["bench"] = {{"endurance_cycles", c.bench.endurance_cycles},
                  {"retention_horizon", c.bench.retention_horizon},
                  {"n_reads", c.bench.n_reads}};
    return j;
}

}  // namespace memristor

#include "memristor/defaults.hpp"

#include <array>
#include <json.hpp>

#include "memristor/error.hpp"

namespace memristor {

namespace {

using nlohmann::json;

struct Loaded {
    std::array<std::optional<FamilyDefaults>, kAllFamilies.size()> families;
    BenchDefaults bench{};
};

std::size_t slot(Family f) { return static_cast<std::size_t>(f); }

FamilyDefaults parse_family_defaults(Family f, const json& j) {
    FamilyDefaults d{empty_params(f), {}, {}, std::nullopt, 0.0, 0.0, false, std::nullopt};
    for (const auto& field : param_fields(f)) {
        set_param(d.params, field.name, j.at("params").at(std::string(field.name)).get<double>());
    }
    d.params.validate();
    d.initial_state = DeviceState(j.at("initial_state").get<std::vector<double>>());

    const auto& sw = j.at("sweep");
    d.sweep.v_max_pos = sw.at("v_max_pos").get<double>();
    d.sweep.v_max_neg = sw.at("v_max_neg").get<double>();
    d.sweep.period = sw.at("period").get<double>();
    d.sweep.cycles = sw.at("cycles").get<int>();
    d.sweep.dt = sw.at("dt").get<double>();

    if (j.contains("initialization") && !j.at("initialization").is_null()) {
        const auto& in = j.at("initialization");
        d.init = InitSpec{in.at("v_init").get<double>(), in.at("duration").get<double>()};
    }
    d.read_v = j.at("read_v").get<double>();
    d.read_pulse = j.at("read_pulse").get<double>();
    d.read_on_branch_polarity = j.at("read_on_branch_polarity").get<bool>();
    if (!j.at("ratio_range").is_null()) {
        const auto r = j.at("ratio_range").get<std::array<double, 2>>();
        d.ratio_range = RatioRange{r[0], r[1]};
    }
    return d;
}

const Loaded& loaded() {
    static const Loaded data = [] {
        Loaded out;
        const json root = json::parse(embedded_file("defaults.json"));
        for (Family f : kAllFamilies) {
            out.families[slot(f)] =
                parse_family_defaults(f, root.at("families").at(std::string(family_key(f))));
        }
        const auto& b = root.at("bench");
        out.bench.endurance_cycles = b.at("endurance_cycles").get<int>();
        out.bench.retention_horizon = b.at("retention_horizon").get<double>();
        out.bench.n_reads = b.at("n_reads").get<int>();
        return out;
    }();
    return data;
}

}  // namespace

std::string_view embedded_file(std::string_view name) {
    for (const auto& f : embedded::files()) {
        if (f.name == name) return f.contents;
    }
    throw ConfigError("no embedded data file named '" + std::string(name) + "'");
}

const FamilyDefaults& family_defaults(Family f) { return *loaded().families[slot(f)]; }

const BenchDefaults& bench_defaults() { return loaded().bench; }

}  // namespace memristor

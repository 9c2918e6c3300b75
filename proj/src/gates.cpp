#include "memristor/gates.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "memristor/defaults.hpp"
#include "memristor/error.hpp"
#include "memristor/sweep.hpp"

namespace memristor {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            throw RecipeError("unknown key '" + it.key() + "' in " + std::string(where));
        }
    }
}

double positive(const json& j, const char* key, std::string_view where) {
    const double v = j.at(key).get<double>();
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw RecipeError(std::string(where) + "." + key + " must be positive");
    }
    return v;
}

int bit(int x) {
    if (x != 0 && x != 1) throw RecipeError("gate inputs and outputs are bits");
    return x;
}

const char* const kShipped[] = {"imp.json", "nimp.json", "and.json", "or.json", "true.json", "false.json"};

}  // namespace

GateRecipe parse_recipe(const json& j) {
    try {
        if (!j.is_object()) throw RecipeError("recipe must be a JSON object");
        reject_unknown(j, {"name", "description", "family", "dt", "gap", "init", "pulses", "read", "target"},
                       "recipe");
        GateRecipe r;
        r.name = j.at("name").get<std::string>();
        r.description = j.value("description", "");
        r.family = parse_family(j.value("family", "barrier"));
        r.dt = positive(j, "dt", "recipe");
        r.gap = j.value("gap", 0.0);
        if (r.gap < 0.0) throw RecipeError("recipe.gap must be >= 0");

        const json& init = j.at("init");
        reject_unknown(init, {"amplitude", "duration"}, "recipe.init");
        r.init_amplitude = init.at("amplitude").get<double>();
        r.init_duration = positive(init, "duration", "recipe.init");

        for (const json& p : j.at("pulses")) {
            reject_unknown(p, {"amplitudes", "duration"}, "recipe.pulses[]");
            PulseSpec ps;
            const json& amp = p.at("amplitudes");
            if (!amp.is_array() || amp.size() != 2 || amp[0].size() != 2 || amp[1].size() != 2) {
                throw RecipeError("pulse amplitudes must be a 2x2 table indexed [A][B]");
            }
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) ps.amplitudes[a][b] = amp[a][b].get<double>();
            }
            ps.duration = positive(p, "duration", "recipe.pulses[]");
            r.pulses.push_back(ps);
        }

        const json& rd = j.at("read");
        reject_unknown(rd, {"polarity", "amplitude", "threshold", "invert"}, "recipe.read");
        const auto pol = rd.at("polarity").get<std::string>();
        if (pol == "positive" || pol == "+") {
            r.read.polarity = 1;
        } else if (pol == "negative" || pol == "-") {
            r.read.polarity = -1;
        } else {
            throw RecipeError("read polarity must be 'positive' or 'negative'");
        }
        r.read.amplitude = positive(rd, "amplitude", "recipe.read");
        r.read.threshold = positive(rd, "threshold", "recipe.read");
        r.read.invert = rd.value("invert", false);

        if (j.contains("target")) {
            const json& t = j.at("target");
            if (!t.is_array() || t.size() != 4) throw RecipeError("target must list 4 bits (00, 01, 10, 11)");
            std::array<int, 4> bits{};
            for (std::size_t k = 0; k < 4; ++k) bits[k] = bit(t[k].get<int>());
            r.target = bits;
        }
        return r;
    } catch (const json::exception& e) {
        throw RecipeError(std::string("malformed recipe: ") + e.what());
    } catch (const ConfigError& e) {
        if (dynamic_cast<const RecipeError*>(&e)) throw;
        throw RecipeError(e.what());
    }
}

GateRecipe load_recipe(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open recipe file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw RecipeError("recipe " + path + ": " + e.what());
    }
    return parse_recipe(j);
}

std::vector<GateRecipe> shipped_recipes() {
    std::vector<GateRecipe> out;
    for (const char* name : kShipped) out.push_back(parse_recipe(json::parse(embedded_file(name))));
    return out;
}

void validate_recipe(const ModelParams& params, const GateRecipe& recipe, double v_max_pos, double v_max_neg) {
    if (params.family != recipe.family) {
        throw RecipeError("recipe " + recipe.name + " targets " + std::string(family_name(recipe.family)) +
                          ", model is " + std::string(family_name(params.family)));
    }
    auto check = [&](double v, const std::string& what) {
        if (v > v_max_pos || v < -v_max_neg) {
            throw RecipeError("recipe " + recipe.name + ": " + what + " amplitude " + std::to_string(v) +
                              " V outside [-" + std::to_string(v_max_neg) + ", " + std::to_string(v_max_pos) + "] V");
        }
    };
    check(recipe.init_amplitude, "init");
    for (const auto& p : recipe.pulses) {
        for (const auto& row : p.amplitudes) {
            for (double v : row) check(v, "pulse");
        }
    }
    check(recipe.read.voltage(), "read");

    const std::size_t dim = state_dimension(params.family);
    const double i0 = std::abs(model_current(params, recipe.read.voltage(), DeviceState(std::vector<double>(dim, 0.0))));
    const double i1 = std::abs(model_current(params, recipe.read.voltage(), DeviceState(std::vector<double>(dim, 1.0))));
    const double lo = std::min(i0, i1);
    const double hi = std::max(i0, i1);
    if (!(recipe.read.threshold > lo && recipe.read.threshold < hi)) {
        std::ostringstream msg;
        msg << "recipe " << recipe.name << ": threshold " << recipe.read.threshold
            << " A is outside the achievable read-current interval (" << lo << ", " << hi << ") A";
        throw RecipeError(msg.str());
    }
}

GateResult evaluate_gate(const ModelParams& params, const GateRecipe& recipe, int a, int b) {
    bit(a);
    bit(b);
    const FamilyDefaults& d = family_defaults(params.family);
    validate_recipe(params, recipe, d.sweep.v_max_pos, d.sweep.v_max_neg);

    Waveform w = make_constant(recipe.init_amplitude, recipe.init_duration, recipe.dt);
    for (const auto& p : recipe.pulses) {
        if (recipe.gap > 0.0) append(w, make_constant(0.0, recipe.gap, recipe.dt));
        append(w, make_constant(p.amplitudes[a][b], p.duration, recipe.dt));
    }
    const IVTrace tr = simulate(params, d.initial_state, w);

    GateResult r;
    r.read_current = model_current(params, recipe.read.voltage(), tr.state->back());
    r.output = (std::abs(r.read_current) > recipe.read.threshold) != recipe.read.invert ? 1 : 0;
    return r;
}

TruthTable truth_table(const ModelParams& params, const GateRecipe& recipe, const std::array<int, 4>& order) {
    std::set<int> seen(order.begin(), order.end());
    if (seen != std::set<int>{0, 1, 2, 3}) throw ConfigError("row order must be a permutation of 0..3");
    TruthTable t;
    for (int row : order) {
        const GateResult g = evaluate_gate(params, recipe, row >> 1, row & 1);
        t.outputs[static_cast<std::size_t>(row)] = g.output;
        t.currents[static_cast<std::size_t>(row)] = g.read_current;
    }
    return t;
}

GateVerification verify_recipe(const ModelParams& params, const GateRecipe& recipe) {
    if (!recipe.target) throw RecipeError("recipe " + recipe.name + " declares no target table");
    GateVerification v;
    v.table = truth_table(params, recipe);
    v.target = *recipe.target;
    v.all_match = true;
    for (std::size_t k = 0; k < 4; ++k) {
        v.row_match[k] = v.table.outputs[k] == v.target[k];
        v.all_match = v.all_match && v.row_match[k];
    }
    return v;
}

}  // namespace memristor

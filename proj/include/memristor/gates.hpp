#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "memristor/model.hpp"

namespace memristor {

/// One write pulse; the amplitude is selected by the inputs as amplitudes[a][b].
struct PulseSpec {
    std::array<std::array<double, 2>, 2> amplitudes{};
    double duration = 0.0;  ///< s
};

struct ReadSpec {
    int polarity = 1;        ///< +1 or -1
    double amplitude = 0.0;  ///< V, magnitude
    double threshold = 0.0;  ///< A, compared with |I|
    bool invert = false;

    [[nodiscard]] double voltage() const { return polarity * amplitude; }
};

struct GateRecipe {
    std::string name;
    std::string description;
    Family family = Family::BarrierNonlinear;
    double dt = 1e-5;   ///< s
    double gap = 0.0;   ///< s at 0 V before each pulse
    double init_amplitude = 0.0;
    double init_duration = 0.0;
    std::vector<PulseSpec> pulses;
    ReadSpec read;
    /// Declared outputs for (A,B) = 00, 01, 10, 11.
    std::optional<std::array<int, 4>> target;
};

GateRecipe parse_recipe(const nlohmann::json& j);
GateRecipe load_recipe(const std::string& path);

/// The recipes compiled into the library, in the order IMP, NIMP, AND, OR, TRUE, FALSE.
std::vector<GateRecipe> shipped_recipes();

/// Throws RecipeError when an amplitude leaves [-v_max_neg, v_max_pos] or the
/// threshold is not strictly inside the read-current interval of the model.
void validate_recipe(const ModelParams& params, const GateRecipe& recipe, double v_max_pos,
                     double v_max_neg);

struct GateResult {
    int output = 0;
    double read_current = 0.0;  ///< A, signed
};

/// Validates against the family's default sweep amplitude, then runs
/// init, pulses and read from the family's default initial state.
GateResult evaluate_gate(const ModelParams& params, const GateRecipe& recipe, int a, int b);

struct TruthTable {
    std::array<int, 4> outputs{};
    std::array<double, 4> currents{};
};

/// Rows are evaluated in the given order, each from a fresh device.
TruthTable truth_table(const ModelParams& params, const GateRecipe& recipe,
                       const std::array<int, 4>& order = {0, 1, 2, 3});

struct GateVerification {
    TruthTable table;
    std::array<int, 4> target{};
    std::array<bool, 4> row_match{};
    bool all_match = false;
};

/// Compares the produced table with the recipe's declared target.
GateVerification verify_recipe(const ModelParams& params, const GateRecipe& recipe);

}  // namespace memristor

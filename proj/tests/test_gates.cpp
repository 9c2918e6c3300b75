#include <doctest.h>

#include <json.hpp>

#include "memristor/defaults.hpp"
#include "memristor/error.hpp"
#include "memristor/gates.hpp"

using namespace memristor;

namespace {

const ModelParams& barrier() { return family_defaults(Family::BarrierNonlinear).params; }

GateRecipe shipped(const std::string& name) {
    for (const auto& r : shipped_recipes()) {
        if (r.name == name) return r;
    }
    FAIL("no shipped recipe " << name);
    return {};
}

nlohmann::json recipe_json(const std::string& name) {
    return nlohmann::json::parse(embedded_file(name + ".json"));
}

}  // namespace

TEST_CASE("shipped recipe set") {
    const auto all = shipped_recipes();
    REQUIRE(all.size() == 6);
    CHECK(all[0].name == "IMP");
    CHECK(all[1].name == "NIMP");
    CHECK(all[2].name == "AND");
    CHECK(all[3].name == "OR");
    CHECK(all[4].name == "TRUE");
    CHECK(all[5].name == "FALSE");
}

TEST_CASE("implication truth table") {
    const TruthTable t = truth_table(barrier(), shipped("IMP"));
    CHECK(t.outputs == std::array<int, 4>{1, 1, 0, 1});
}

TEST_CASE("constant recipes") {
    CHECK(truth_table(barrier(), shipped("TRUE")).outputs == std::array<int, 4>{1, 1, 1, 1});
    CHECK(truth_table(barrier(), shipped("FALSE")).outputs == std::array<int, 4>{0, 0, 0, 0});
}

TEST_CASE("every shipped recipe reproduces its declared table") {
    for (const auto& r : shipped_recipes()) {
        const GateVerification v = verify_recipe(barrier(), r);
        INFO(r.name);
        CHECK(v.all_match);
        for (bool row : v.row_match) CHECK(row);
        REQUIRE(r.target.has_value());
        CHECK(v.table.outputs == *r.target);
    }
}

TEST_CASE("inverted read gives the bitwise complement") {
    for (const auto& r : shipped_recipes()) {
        GateRecipe inv = r;
        inv.read.invert = !r.read.invert;
        const auto a = truth_table(barrier(), r).outputs;
        const auto b = truth_table(barrier(), inv).outputs;
        for (std::size_t k = 0; k < 4; ++k) CHECK(b[k] == 1 - a[k]);
    }
}

TEST_CASE("row evaluation order does not change the table") {
    const std::array<std::array<int, 4>, 3> orders{{{3, 2, 1, 0}, {1, 3, 0, 2}, {2, 0, 3, 1}}};
    for (const auto& r : shipped_recipes()) {
        const TruthTable base = truth_table(barrier(), r);
        for (const auto& o : orders) {
            const TruthTable t = truth_table(barrier(), r, o);
            CHECK(t.outputs == base.outputs);
            CHECK(t.currents == base.currents);
        }
    }
}

TEST_CASE("read magnitude depends on read polarity at a fixed written state") {
    for (double s : {0.12, 0.5, 0.88}) {
        const double pos = std::abs(model_current(barrier(), 0.2, DeviceState{s}));
        const double neg = std::abs(model_current(barrier(), -0.2, DeviceState{s}));
        CHECK(std::abs(pos - neg) > 0.1 * std::max(pos, neg));
    }
}

TEST_CASE("recipe amplitudes outside the sweep range are rejected") {
    GateRecipe r = shipped("IMP");
    r.pulses[0].amplitudes[1][1] = 5.0;
    CHECK_THROWS_AS(evaluate_gate(barrier(), r, 1, 1), RecipeError);
}

TEST_CASE("threshold outside the achievable read currents is rejected") {
    GateRecipe r = shipped("IMP");
    r.read.threshold = 1.0;
    CHECK_THROWS_AS(truth_table(barrier(), r), RecipeError);
    r.read.threshold = 1e-15;
    CHECK_THROWS_AS(truth_table(barrier(), r), RecipeError);
}

TEST_CASE("recipe parsing is strict") {
    auto j = recipe_json("imp");
    CHECK_NOTHROW(parse_recipe(j));

    auto extra = j;
    extra["colour"] = "blue";
    CHECK_THROWS_AS(parse_recipe(extra), RecipeError);

    auto bad_pol = j;
    bad_pol["read"]["polarity"] = "sideways";
    CHECK_THROWS_AS(parse_recipe(bad_pol), RecipeError);

    auto bad_table = j;
    bad_table["pulses"][0]["amplitudes"] = nlohmann::json::array({1.0, 2.0});
    CHECK_THROWS_AS(parse_recipe(bad_table), RecipeError);

    auto no_read = j;
    no_read.erase("read");
    CHECK_THROWS_AS(parse_recipe(no_read), RecipeError);
}

TEST_CASE("polarity spellings") {
    auto j = recipe_json("nimp");
    CHECK(parse_recipe(j).read.polarity == -1);
    j["read"]["polarity"] = "+";
    CHECK(parse_recipe(j).read.polarity == 1);
}

TEST_CASE("missing recipe file is an I/O error") {
    CHECK_THROWS_AS(load_recipe("/nonexistent/recipe.json"), Error);
}

TEST_CASE("gate inputs must be bits") {
    CHECK_THROWS_AS(evaluate_gate(barrier(), shipped("AND"), 2, 0), ConfigError);
}

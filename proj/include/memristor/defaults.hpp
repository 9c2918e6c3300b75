#pragma once

// Shipped default parameter sets, sweeps and gate recipes. The values live in
// data/*.json and are compiled into the library.

#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "memristor/model.hpp"
#include "memristor/sweep.hpp"

namespace memristor {

namespace embedded {
struct EmbeddedFile {
    std::string_view name;
    std::string_view contents;
};
std::span<const EmbeddedFile> files();
}  // namespace embedded

/// Contents of an embedded data file, e.g. "defaults.json" or "imp.json".
std::string_view embedded_file(std::string_view name);

/// Decade bounds of R_OFF/R_ON reported for a device family.
struct RatioRange {
    double low;
    double high;
};

struct FamilyDefaults {
    ModelParams params;
    DeviceState initial_state;
    SweepSpec sweep;
    std::optional<InitSpec> init;
    double read_v;       ///< V, standard read voltage
    double read_pulse;   ///< s, duration of one read pulse
    /// Read each state at the polarity of the branch that follows its write
    /// (LRS at +read_v, HRS at -read_v) instead of always at +read_v.
    bool read_on_branch_polarity = false;
    std::optional<RatioRange> ratio_range;
};

const FamilyDefaults& family_defaults(Family f);

/// Settings shared by the benchmark runs.
struct BenchDefaults {
    int endurance_cycles;
    double retention_horizon;  ///< s
    int n_reads;
};

const BenchDefaults& bench_defaults();

}  // namespace memristor

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "memristor/defaults.hpp"
#include "memristor/model.hpp"
#include "memristor/sweep.hpp"

namespace memristor {

inline constexpr double kDisturbTolerance = 1e-4;
inline constexpr double kTenYears = 3.156e8;  ///< s
inline constexpr double kEnduranceIndustrial = 0.5e6;
inline constexpr double kEnduranceTarget = 1e6;

struct ReadSetup {
    double read_v = 0.1;       ///< V
    double read_pulse = 0.01;  ///< s
    bool read_on_branch_polarity = false;
    double dt = 1e-5;          ///< s, step of the read-pulse simulation
};

struct RatioReport {
    double r_off = 0.0;
    double r_on = 0.0;
    double ratio = 1.0;         ///< at +read_v
    double ratio_negative = 1.0;///< same states read at -read_v
    double i_lrs = 0.0;         ///< A, at +read_v
    double i_hrs = 0.0;
    DeviceState s_lrs;
    DeviceState s_hrs;
    double read_drift = 0.0;    ///< largest state change over one read pulse
    bool disturb = false;       ///< read_drift > kDisturbTolerance
    std::optional<RatioRange> expected;
    bool in_expected_range = true;
};

/// Writes LRS with the positive half of one sweep cycle and HRS with the
/// negative half (after the optional initialization), then reads both.
RatioReport roff_ron(const ModelParams& params, const DeviceState& s0, const SweepSpec& sweep,
                     const std::optional<InitSpec>& init, const ReadSetup& read);

/// Defaults of a family plugged into the call above.
RatioReport roff_ron(Family f);

struct EnduranceReport {
    int cycles_tested = 0;
    /// deviations[k] compares cycle k + 2 with cycle k + 1 (max-norm, relative).
    std::vector<double> deviations;
    double max_deviation = 0.0;  ///< over cycles >= 3
    bool stable = false;         ///< max_deviation < 1e-2
    double industrial_threshold = kEnduranceIndustrial;
    double target_threshold = kEnduranceTarget;
    std::string note;
};

EnduranceReport endurance_run(const ModelParams& params, const DeviceState& s0, SweepSpec sweep,
                              const std::optional<InitSpec>& init, int n_cycles);

struct RetentionReport {
    std::vector<double> t;
    std::vector<double> s;
    /// Time to 10 % relative state loss; empty when not reached within the horizon.
    std::optional<double> t_10pct;
    double horizon = 0.0;
    bool closed_form = false;
    bool meets_ten_years = false;
};

/// Closed form for the exponential retention law, RK4 at V = 0 otherwise.
RetentionReport retention_run(const ModelParams& params, const DeviceState& s0, double horizon,
                              std::size_t steps = 10000);

/// Always numerical; used to cross-check the closed form.
RetentionReport retention_numerical(const ModelParams& params, const DeviceState& s0, double horizon,
                                    std::size_t steps = 10000);

struct ReadDisturbReport {
    std::vector<double> per_read;  ///< max-norm state change per pulse
    double cumulative = 0.0;       ///< max-norm change after all pulses
    double max_per_read = 0.0;
};

/// Applies n_reads back-to-back read pulses of read_v (signed).
ReadDisturbReport read_disturb(const ModelParams& params, const DeviceState& s0, double read_v,
                               double read_pulse, int n_reads, double dt = 1e-5);

struct BenchReport {
    Family family = Family::StrukovTiO2;
    RatioReport ratio;
    EnduranceReport endurance;
    RetentionReport retention;
    ReadDisturbReport read_disturb;
};

/// Full benchmark of a family's shipped defaults.
BenchReport run_bench(Family f);

/// Benchmark of an arbitrary parameter set with the family's sweep and read settings.
BenchReport run_bench(const ModelParams& params, const DeviceState& s0, const FamilyDefaults& settings,
                      const BenchDefaults& bench);

}  // namespace memristor

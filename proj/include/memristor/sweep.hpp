#pragma once

// Voltage waveforms and fixed-step time integration of the device models.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "memristor/model.hpp"

namespace memristor {

inline constexpr const char* kEndOfInitialization = "end_of_initialization";

struct Marker {
    std::size_t index;
    std::string label;

    friend bool operator==(const Marker&, const Marker&) = default;
};

/// Uniformly sampled voltage program.
struct Waveform {
    double dt = 0.0;
    std::vector<double> samples;
    std::vector<Marker> markers;

    /// dt > 0, at least two samples, markers in range.
    void validate() const;
    [[nodiscard]] std::size_t size() const { return samples.size(); }
};

/// Parameters of a canonical triangular sweep.
struct SweepSpec {
    double v_max_pos = 1.0;
    double v_max_neg = 1.0;
    double period = 1.0;
    int cycles = 1;
    double dt = 1e-3;
};

/// Constant-voltage prefix that fixes the internal state before t0.
struct InitSpec {
    double v_init = 0.0;
    double duration = 0.0;
};

/// 0 -> +v_max_pos -> 0 -> -v_max_neg -> 0, repeated `cycles` times.
/// Sample count is round(cycles * period / dt) + 1.
Waveform make_sweep(double v_max_pos, double v_max_neg, double period, int cycles, double dt);
Waveform make_sweep(const SweepSpec& spec);

/// Constant v_init for `duration`, with the end-of-initialization marker on
/// its last sample.
Waveform make_initialization(double v_init, double duration, double dt);

/// Constant level, no markers. Used for pulse programs.
Waveform make_constant(double v, double duration, double dt);

/// Appends b to a; b's markers are shifted. Both must share dt.
void append(Waveform& a, const Waveform& b);

/// Sampled current/voltage record.
struct IVTrace {
    double dt = 0.0;
    std::vector<double> t;
    std::vector<double> v;
    std::vector<double> i;
    /// Per-sample internal state; absent for imported traces.
    std::optional<std::vector<DeviceState>> state;
    /// First analyzed sample. Samples before it only feed the offsets.
    std::size_t t0_index = 0;

    void validate() const;
    [[nodiscard]] std::size_t size() const { return v.size(); }
    [[nodiscard]] std::size_t analyzed_size() const { return v.size() - t0_index; }
};

/// Integrates ds/dt = g(V(t), s) with classical RK4 at the waveform step.
/// V is linear between samples; the state is clamped to [0, 1] after each
/// step and i[n] = current(v[n], s[n]). Bit-reproducible.
IVTrace simulate(const ModelParams& params, const DeviceState& s0, const Waveform& w);

/// Sweep optionally preceded by an initialization prefix.
Waveform make_run_waveform(const SweepSpec& sweep, const std::optional<InitSpec>& init);

}  // namespace memristor

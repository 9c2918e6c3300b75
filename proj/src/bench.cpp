#include "memristor/bench.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "memristor/error.hpp"

namespace memristor {

namespace {

std::size_t steps_per_period(const SweepSpec& s) {
    const double n = s.period / s.dt;
    const auto r = static_cast<std::size_t>(std::llround(n));
    if (r < 4 || std::abs(n - static_cast<double>(r)) > 1e-9 * n) {
        throw ConfigError("sweep period must be a whole number of steps");
    }
    return r;
}

double max_norm_diff(const DeviceState& a, const DeviceState& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

double max_norm(const DeviceState& a) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k]));
    return d;
}

std::optional<double> first_loss_time(const std::vector<double>& t, const std::vector<DeviceState>& s,
                                      const DeviceState& s0) {
    const double ref = max_norm(s0);
    if (!(ref > 0.0)) return std::nullopt;
    const double limit = 0.1 * ref;
    double prev = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double loss = max_norm_diff(s[k], s0);
        if (loss >= limit) {
            if (k == 0) return t[0];
            const double w = (limit - prev) / (loss - prev);
            return t[k - 1] + w * (t[k] - t[k - 1]);
        }
        prev = loss;
    }
    return std::nullopt;
}

void finish_retention(RetentionReport& r) {
    r.meets_ten_years = r.t_10pct ? *r.t_10pct >= kTenYears : r.horizon >= kTenYears;
}

}  // namespace

RatioReport roff_ron(const ModelParams& params, const DeviceState& s0, const SweepSpec& sweep,
                     const std::optional<InitSpec>& init, const ReadSetup& read) {
    if (!(read.read_v > 0.0)) throw ConfigError("read voltage must be positive");
    SweepSpec one = sweep;
    one.cycles = 1;
    const std::size_t per = steps_per_period(one);
    const IVTrace tr = simulate(params, s0, make_run_waveform(one, init));

    RatioReport r;
    r.s_lrs = (*tr.state)[tr.t0_index + per / 2];
    r.s_hrs = tr.state->back();
    double i_a = std::abs(model_current(params, read.read_v, r.s_lrs));
    double i_b = std::abs(model_current(params, read.read_v, r.s_hrs));
    if (i_b > i_a) {
        std::swap(r.s_lrs, r.s_hrs);
        std::swap(i_a, i_b);
    }
    if (!(i_b > 0.0)) throw InputError("read current vanishes; resistance undefined");
    r.i_lrs = i_a;
    r.i_hrs = i_b;
    r.r_on = read.read_v / i_a;
    r.r_off = read.read_v / i_b;
    r.ratio = r.r_off / r.r_on;

    const double n_a = std::abs(model_current(params, -read.read_v, r.s_lrs));
    const double n_b = std::abs(model_current(params, -read.read_v, r.s_hrs));
    r.ratio_negative = std::max(n_a, n_b) / std::min(n_a, n_b);

    const double v_hrs = read.read_on_branch_polarity ? -read.read_v : read.read_v;
    const auto d_lrs = read_disturb(params, r.s_lrs, read.read_v, read.read_pulse, 1, read.dt);
    const auto d_hrs = read_disturb(params, r.s_hrs, v_hrs, read.read_pulse, 1, read.dt);
    r.read_drift = std::max(d_lrs.max_per_read, d_hrs.max_per_read);
    r.disturb = r.read_drift > kDisturbTolerance;
    return r;
}

RatioReport roff_ron(Family f) {
    const FamilyDefaults& d = family_defaults(f);
    RatioReport r = roff_ron(d.params, d.initial_state, d.sweep, d.init,
                             ReadSetup{d.read_v, d.read_pulse, d.read_on_branch_polarity, d.sweep.dt});
    r.expected = d.ratio_range;
    if (r.expected) r.in_expected_range = r.ratio >= r.expected->low && r.ratio <= r.expected->high;
    return r;
}

EnduranceReport endurance_run(const ModelParams& params, const DeviceState& s0, SweepSpec sweep,
                              const std::optional<InitSpec>& init, int n_cycles) {
    if (n_cycles < 3) throw ConfigError("endurance run needs at least 3 cycles");
    sweep.cycles = n_cycles;
    const std::size_t per = steps_per_period(sweep);
    const IVTrace tr = simulate(params, s0, make_run_waveform(sweep, init));

    EnduranceReport r;
    r.cycles_tested = n_cycles;
    for (int c = 2; c <= n_cycles; ++c) {
        const std::size_t cur = tr.t0_index + static_cast<std::size_t>(c - 1) * per;
        const std::size_t prev = cur - per;
        double diff = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < per; ++k) {
            diff = std::max(diff, std::abs(tr.i[cur + k] - tr.i[prev + k]));
            scale = std::max(scale, std::abs(tr.i[prev + k]));
        }
        r.deviations.push_back(scale > 0.0 ? diff / scale : 0.0);
    }
    for (std::size_t k = 1; k < r.deviations.size(); ++k) {
        r.max_deviation = std::max(r.max_deviation, r.deviations[k]);
    }
    r.stable = r.max_deviation < 1e-2;

    std::ostringstream note;
    note << "simulated " << n_cycles << " cycles; the model has no wear mechanism, so the "
         << kEnduranceIndustrial << " (industrial) and " << kEnduranceTarget
         << " (target) cycle thresholds are judged by extrapolating a stable cycle-to-cycle deviation: "
         << (r.stable ? "pass" : "fail") << " against " << kEnduranceTarget;
    r.note = note.str();
    return r;
}

RetentionReport retention_numerical(const ModelParams& params, const DeviceState& s0, double horizon,
                                    std::size_t steps) {
    if (!(horizon > 0.0)) throw ConfigError("retention horizon must be positive");
    if (steps < 1) throw ConfigError("retention needs at least one step");
    const IVTrace tr = simulate(params, s0, make_constant(0.0, horizon, horizon / static_cast<double>(steps)));
    RetentionReport r;
    r.horizon = horizon;
    r.t_10pct = first_loss_time(tr.t, *tr.state, s0);
    const std::size_t stride = std::max<std::size_t>(1, steps / 100);
    for (std::size_t k = 0; k < tr.size(); k += stride) {
        r.t.push_back(tr.t[k]);
        r.s.push_back((*tr.state)[k][0]);
    }
    if (r.t.back() != tr.t.back()) {
        r.t.push_back(tr.t.back());
        r.s.push_back(tr.state->back()[0]);
    }
    finish_retention(r);
    return r;
}

RetentionReport retention_run(const ModelParams& params, const DeviceState& s0, double horizon,
                              std::size_t steps) {
    if (params.family != Family::BarrierNonlinear) return retention_numerical(params, s0, horizon, steps);
    if (!(horizon > 0.0)) throw ConfigError("retention horizon must be positive");
    params.validate();
    const double tau = params.as<BarrierParams>().tau_ret;
    RetentionReport r;
    r.horizon = horizon;
    r.closed_form = true;
    for (int k = 0; k <= 100; ++k) {
        const double t = horizon * k / 100.0;
        r.t.push_back(t);
        r.s.push_back(s0[0] * std::exp(-t / tau));
    }
    const double t10 = -std::log(0.9) * tau;
    if (s0[0] > 0.0 && std::isfinite(t10) && t10 <= horizon) r.t_10pct = t10;
    finish_retention(r);
    return r;
}

ReadDisturbReport read_disturb(const ModelParams& params, const DeviceState& s0, double read_v,
                               double read_pulse, int n_reads, double dt) {
    if (n_reads < 1) throw ConfigError("read disturb needs at least one read");
    if (!(read_pulse > 0.0) || !(dt > 0.0)) throw ConfigError("read pulse and dt must be positive");
    const auto per = static_cast<std::size_t>(std::max(1.0, std::round(read_pulse / dt)));
    const double step = read_pulse / static_cast<double>(per);
    const IVTrace tr = simulate(params, s0, make_constant(read_v, read_pulse * n_reads, step));
    const auto& s = *tr.state;
    ReadDisturbReport r;
    for (int k = 0; k < n_reads; ++k) {
        const std::size_t a = static_cast<std::size_t>(k) * per;
        const std::size_t b = std::min(a + per, s.size() - 1);
        r.per_read.push_back(max_norm_diff(s[b], s[a]));
        r.max_per_read = std::max(r.max_per_read, r.per_read.back());
    }
    r.cumulative = max_norm_diff(s[std::min(static_cast<std::size_t>(n_reads) * per, s.size() - 1)], s0);
    return r;
}

BenchReport run_bench(const ModelParams& params, const DeviceState& s0, const FamilyDefaults& settings,
                      const BenchDefaults& bench) {
    BenchReport b;
    b.family = params.family;
    const ReadSetup read{settings.read_v, settings.read_pulse, settings.read_on_branch_polarity,
                         settings.sweep.dt};
    b.ratio = roff_ron(params, s0, settings.sweep, settings.init, read);
    if (params.family == settings.params.family) b.ratio.expected = settings.ratio_range;
    if (b.ratio.expected) {
        b.ratio.in_expected_range = b.ratio.ratio >= b.ratio.expected->low && b.ratio.ratio <= b.ratio.expected->high;
    }
    b.endurance = endurance_run(params, s0, settings.sweep, settings.init, bench.endurance_cycles);
    b.retention = retention_run(params, b.ratio.s_lrs, bench.retention_horizon);

    const double v_hrs = settings.read_on_branch_polarity ? -settings.read_v : settings.read_v;
    auto lrs = read_disturb(params, b.ratio.s_lrs, settings.read_v, settings.read_pulse, bench.n_reads,
                            settings.sweep.dt);
    auto hrs = read_disturb(params, b.ratio.s_hrs, v_hrs, settings.read_pulse, bench.n_reads, settings.sweep.dt);
    b.read_disturb = hrs.max_per_read > lrs.max_per_read ? std::move(hrs) : std::move(lrs);
    return b;
}

BenchReport run_bench(Family f) {
    const FamilyDefaults& d = family_defaults(f);
    return run_bench(d.params, d.initial_state, d, bench_defaults());
}

}  // namespace memristor

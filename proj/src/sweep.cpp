#include "memristor/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "memristor/error.hpp"

namespace memristor {

namespace {

std::size_t step_count(double span, double dt, const char* what) {
    const double n = span / dt;
    if (!std::isfinite(n) || n > 1e9) throw ConfigError(std::string(what) + ": too many samples");
    return static_cast<std::size_t>(std::llround(n));
}

// Triangle at phase fraction u in [0, 1): 0 -> +1 -> 0 -> -1 -> 0.
double triangle(double u, double pos, double neg) {
    if (u < 0.25) return 4.0 * u * pos;
    if (u < 0.5) return (2.0 - 4.0 * u) * pos;
    if (u < 0.75) return (2.0 - 4.0 * u) * neg;
    return (4.0 * u - 4.0) * neg;
}

}  // namespace

void Waveform::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("waveform dt must be positive");
    if (samples.size() < 2) throw ConfigError("waveform needs at least 2 samples");
    for (const auto& m : markers) {
        if (m.index >= samples.size()) throw ConfigError("waveform marker out of range");
    }
}

Waveform make_sweep(double v_max_pos, double v_max_neg, double period, int cycles, double dt) {
    if (!(v_max_pos > 0.0) || !(v_max_neg > 0.0)) throw ConfigError("sweep amplitudes must be positive");
    if (!(dt > 0.0)) throw ConfigError("sweep dt must be positive");
    if (!(period >= 4.0 * dt)) throw ConfigError("sweep period must be at least 4 dt");
    if (cycles < 1) throw ConfigError("sweep needs at least one cycle");

    const std::size_t n = step_count(cycles * period, dt, "sweep");
    Waveform w;
    w.dt = dt;
    w.samples.resize(n + 1);

    // Exact integer phase when the period is a whole number of steps, so that
    // zero crossings and extrema land on samples without rounding noise.
    const double per_steps = period / dt;
    const auto per_n = static_cast<std::size_t>(std::llround(per_steps));
    const bool integral = std::abs(per_steps - static_cast<double>(per_n)) < 1e-9 * per_steps;
    for (std::size_t k = 0; k <= n; ++k) {
        double u;
        if (integral) {
            u = static_cast<double>(k % per_n) / static_cast<double>(per_n);
        } else {
            const double t = static_cast<double>(k) * dt;
            u = std::fmod(t, period) / period;
        }
        w.samples[k] = triangle(u, v_max_pos, v_max_neg);
    }
    w.samples.back() = 0.0;
    return w;
}

Waveform make_sweep(const SweepSpec& s) {
    return make_sweep(s.v_max_pos, s.v_max_neg, s.period, s.cycles, s.dt);
}

Waveform make_constant(double v, double duration, double dt) {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(duration >= dt)) throw ConfigError("duration must be at least dt");
    if (!std::isfinite(v)) throw ConfigError("voltage must be finite");
    Waveform w;
    w.dt = dt;
    w.samples.assign(step_count(duration, dt, "constant") + 1, v);
    return w;
}

Waveform make_initialization(double v_init, double duration, double dt) {
    Waveform w = make_constant(v_init, duration, dt);
    w.markers.push_back({w.samples.size() - 1, kEndOfInitialization});
    return w;
}

void append(Waveform& a, const Waveform& b) {
    if (a.samples.empty()) {
        a = b;
        return;
    }
    if (a.dt != b.dt) throw ConfigError("cannot append waveforms with different dt");
    const std::size_t offset = a.samples.size();
    a.samples.insert(a.samples.end(), b.samples.begin(), b.samples.end());
    for (const auto& m : b.markers) a.markers.push_back({m.index + offset, m.label});
}

Waveform make_run_waveform(const SweepSpec& sweep, const std::optional<InitSpec>& init) {
    Waveform sw = make_sweep(sweep);
    if (!init || init->duration <= 0.0) return sw;
    Waveform w = make_initialization(init->v_init, init->duration, sweep.dt);
    append(w, sw);
    return w;
}

void IVTrace::validate() const {
    if (!(dt > 0.0)) throw InputError("trace dt must be positive");
    if (t.size() != v.size() || v.size() != i.size()) throw InputError("trace columns differ in length");
    if (state && state->size() != v.size()) throw InputError("trace state length differs");
    if (v.empty() || t0_index >= v.size()) throw InputError("trace t0_index out of range");
    for (std::size_t n = 1; n < t.size(); ++n) {
        if (!(t[n] > t[n - 1])) throw InputError("trace time not strictly increasing");
    }
}

namespace {
constexpr double kOneSidedFraction = 1e-12;
}  // namespace

IVTrace simulate(const ModelParams& params, const DeviceState& s0, const Waveform& w) {
    w.validate();
    const auto model = make_model(params);
    const std::size_t dim = model->state_dim();
    if (s0.size() != dim) throw ConfigError("initial state has wrong dimension");
    if (!s0.within_bounds()) throw ConfigError("initial state outside [0, 1]");

    const std::size_t n = w.samples.size();
    const double dt = w.dt;

    IVTrace tr;
    tr.dt = dt;
    tr.t.resize(n);
    tr.v = w.samples;
    tr.i.resize(n);
    tr.state.emplace();
    tr.state->reserve(n);
    for (const auto& m : w.markers) {
        if (m.label == kEndOfInitialization) tr.t0_index = std::min(m.index + 1, n - 1);
    }

    std::vector<double> s(s0.values().begin(), s0.values().end());
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    for (std::size_t step = 0; step < n; ++step) {
        tr.t[step] = static_cast<double>(step) * dt;
        const double cur = model->current(w.samples[step], s);
        if (!std::isfinite(cur)) throw NumericalInstabilityError(step, "non-finite current");
        tr.i[step] = cur;
        tr.state->emplace_back(s);
        if (step + 1 == n) break;

        // End-point stages see V as a one-sided limit inside the step, so rate
        // laws that switch at a sample voltage (e.g. at 0 V) use the branch
        // that is active over the interval.
        const double v0 = w.samples[step];
        const double v1 = w.samples[step + 1];
        const double nudge = kOneSidedFraction * (v1 - v0);
        const double va = v0 + nudge;
        const double vb = v1 - nudge;
        const double vm = 0.5 * (v0 + v1);

        model->state_rate(va, s, k1);
        for (std::size_t k = 0; k < dim; ++k) tmp[k] = s[k] + 0.5 * dt * k1[k];
        model->state_rate(vm, tmp, k2);
        for (std::size_t k = 0; k < dim; ++k) tmp[k] = s[k] + 0.5 * dt * k2[k];
        model->state_rate(vm, tmp, k3);
        for (std::size_t k = 0; k < dim; ++k) tmp[k] = s[k] + dt * k3[k];
        model->state_rate(vb, tmp, k4);

        for (std::size_t k = 0; k < dim; ++k) {
            const double next = s[k] + dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
            if (!std::isfinite(next)) throw NumericalInstabilityError(step + 1, "non-finite state");
            s[k] = std::clamp(next, 0.0, 1.0);
        }
    }
    return tr;
}

}  // namespace memristor

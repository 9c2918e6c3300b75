#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "memristor/defaults.hpp"
#include "memristor/error.hpp"
#include "memristor/fluxq.hpp"
#include "memristor/sweep.hpp"

using namespace memristor;

namespace {

double max_abs(const std::vector<double>& v, std::size_t from = 0) {
    double m = 0.0;
    for (std::size_t k = from; k < v.size(); ++k) m = std::max(m, std::abs(v[k]));
    return m;
}

// Compares the coarse trace with every other sample of the fine trace, both
// taken from their own t0 onward; returns the max error relative to max |I|.
double self_convergence_error(const IVTrace& coarse, const IVTrace& fine) {
    double err = 0.0;
    for (std::size_t k = 0; coarse.t0_index + k < coarse.size(); ++k) {
        const std::size_t kf = fine.t0_index + 2 * k;
        REQUIRE(kf < fine.size());
        err = std::max(err, std::abs(coarse.i[coarse.t0_index + k] - fine.i[kf]));
    }
    return err / max_abs(coarse.i, coarse.t0_index);
}

IVTrace run_default(Family f, double dt_scale) {
    const auto& d = family_defaults(f);
    SweepSpec s = d.sweep;
    s.dt *= dt_scale;
    return simulate(d.params, d.initial_state, make_run_waveform(s, d.init));
}

}  // namespace

TEST_CASE("coarsest triangular sweep") {
    const Waveform w = make_sweep(1.0, 1.0, 4.0, 1, 1.0);
    CHECK(w.samples == std::vector<double>{0.0, 1.0, 0.0, -1.0, 0.0});
    CHECK(w.dt == 1.0);
}

TEST_CASE("asymmetric sweep extremes and end points") {
    const Waveform w = make_sweep(2.0, 1.0, 1.0, 1, 0.01);
    CHECK(*std::max_element(w.samples.begin(), w.samples.end()) == 2.0);
    CHECK(*std::min_element(w.samples.begin(), w.samples.end()) == -1.0);
    CHECK(w.samples.front() == 0.0);
    CHECK(w.samples.back() == 0.0);
    CHECK(w.size() == 101);
}

TEST_CASE("two-cycle sweep sample count and boundary") {
    const Waveform w = make_sweep(1.0, 1.0, 4.0, 2, 0.5);
    REQUIRE(w.size() == 17);
    CHECK(w.samples[8] == 0.0);
    CHECK(w.samples[2] == 1.0);
    CHECK(w.samples[14] == -1.0);
}

TEST_CASE("sweep is piecewise linear with four segments per cycle") {
    const Waveform w = make_sweep(1.5, 0.5, 2.0, 3, 0.01);
    const std::size_t per = 200;
    for (std::size_t k = 1; k + 1 < w.size(); ++k) {
        if (k % (per / 4) == 0) continue;
        const double second = w.samples[k + 1] - 2.0 * w.samples[k] + w.samples[k - 1];
        CHECK(std::abs(second) < 1e-12);
    }
}

TEST_CASE("sweep argument validation") {
    CHECK_THROWS_AS(make_sweep(0.0, 1.0, 1.0, 1, 0.01), ConfigError);
    CHECK_THROWS_AS(make_sweep(1.0, -1.0, 1.0, 1, 0.01), ConfigError);
    CHECK_THROWS_AS(make_sweep(1.0, 1.0, 0.03, 1, 0.01), ConfigError);
    CHECK_THROWS_AS(make_sweep(1.0, 1.0, 1.0, 0, 0.01), ConfigError);
    CHECK_THROWS_AS(make_sweep(1.0, 1.0, 1.0, 1, 0.0), ConfigError);
}

TEST_CASE("initialization prefix") {
    const Waveform a = make_initialization(0.0, 1.0, 0.1);
    CHECK(a.size() == 11);
    CHECK(std::all_of(a.samples.begin(), a.samples.end(), [](double v) { return v == 0.0; }));

    const Waveform b = make_initialization(-2.0, 0.5, 0.1);
    REQUIRE(b.size() == 6);
    CHECK(std::all_of(b.samples.begin(), b.samples.end(), [](double v) { return v == -2.0; }));
    REQUIRE(b.markers.size() == 1);
    CHECK(b.markers[0].index == 5);
    CHECK(b.markers[0].label == kEndOfInitialization);

    CHECK_THROWS_AS(make_initialization(0.0, 0.05, 0.1), ConfigError);
}

TEST_CASE("simulate puts t0 right after the initialization prefix") {
    const auto& d = family_defaults(Family::BarrierNonlinear);
    Waveform w = make_initialization(-2.0, 0.5, 1e-3);
    const std::size_t init_len = w.size();
    append(w, make_sweep(2.0, 2.0, 1.0, 1, 1e-3));
    const IVTrace tr = simulate(d.params, d.initial_state, w);
    CHECK(tr.t0_index == init_len);
    CHECK(tr.v[tr.t0_index] == 0.0);
    CHECK(tr.size() == w.size());
    CHECK_NOTHROW(tr.validate());
}

TEST_CASE("frozen strukov state behaves as a resistor") {
    auto p = family_defaults(Family::StrukovTiO2).params;
    set_param(p, "mobility", 0.0);
    const double w0 = 0.3;
    const IVTrace tr = simulate(p, DeviceState{w0}, make_sweep(1.0, 1.0, 1.0, 1, 1e-3));
    const auto& sp = p.as<StrukovParams>();
    const double r = sp.r_on * w0 + sp.r_off * (1.0 - w0);
    for (std::size_t n = 0; n < tr.size(); ++n) {
        CHECK(tr.i[n] == doctest::Approx(tr.v[n] / r).epsilon(1e-14));
    }
    // Rising and falling halves at equal V carry identical current.
    for (std::size_t k = 1; k < 250; ++k) CHECK(tr.i[k] == doctest::Approx(tr.i[500 - k]).epsilon(1e-14));
}

TEST_CASE("filamentary pure-resistor limit") {
    auto p = family_defaults(Family::Filamentary).params;
    set_param(p, "k_set", 0.0);
    set_param(p, "k_reset", 0.0);
    const double g_on = p.as<ThresholdSwitchParams>().g_on;
    const IVTrace tr = simulate(p, DeviceState{1.0}, make_sweep(1.005, 1.005, 1.0, 2, 1e-4));
    for (std::size_t n = 0; n < tr.size(); ++n) CHECK(tr.i[n] == g_on * tr.v[n]);
}

TEST_CASE("halving dt moves the default barrier trace by less than 1e-6 relative") {
    const IVTrace coarse = run_default(Family::BarrierNonlinear, 1.0);
    const IVTrace fine = run_default(Family::BarrierNonlinear, 0.5);
    CHECK(self_convergence_error(coarse, fine) < 1e-6);
}

TEST_CASE("simulation is bit-reproducible") {
    for (Family f : kAllFamilies) {
        const IVTrace a = run_default(f, 4.0);
        const IVTrace b = run_default(f, 4.0);
        CHECK(a.i == b.i);
        CHECK(a.t == b.t);
        CHECK(*a.state == *b.state);
    }
}

TEST_CASE("integrated state stays inside the unit box") {
    for (Family f : kAllFamilies) {
        const auto& d = family_defaults(f);
        SweepSpec s = d.sweep;
        s.v_max_pos *= 1.5;
        s.v_max_neg *= 1.5;
        for (double s0 : {0.0, 1.0}) {
            const IVTrace tr =
                simulate(d.params, DeviceState(std::vector<double>(state_dimension(f), s0)), make_sweep(s));
            for (const auto& st : *tr.state) {
                CHECK(st.within_bounds());
                CHECK(st.size() == state_dimension(f));
            }
        }
    }
}

TEST_CASE("time axis is uniform and starts at zero") {
    const IVTrace tr = run_default(Family::Filamentary, 10.0);
    CHECK(tr.t.front() == 0.0);
    for (std::size_t n = 1; n < tr.size(); ++n) {
        CHECK(tr.t[n] - tr.t[n - 1] == doctest::Approx(tr.dt).epsilon(1e-9));
    }
}

TEST_CASE("non-finite drive raises a numerical instability error") {
    const auto& d = family_defaults(Family::StrukovTiO2);
    Waveform w = make_sweep(1.0, 1.0, 1.0, 1, 0.01);
    w.samples[10] = std::numeric_limits<double>::infinity();
    try {
        (void)simulate(d.params, d.initial_state, w);
        FAIL("expected NumericalInstabilityError");
    } catch (const NumericalInstabilityError& e) {
        CHECK(e.step() <= 10);
    }
}

TEST_CASE("initial state outside the box is rejected") {
    const auto& d = family_defaults(Family::StrukovTiO2);
    CHECK_THROWS_AS(simulate(d.params, DeviceState{1.5}, make_sweep(d.sweep)), ConfigError);
    CHECK_THROWS_AS(simulate(d.params, DeviceState{0.5, 0.5}, make_sweep(d.sweep)), ConfigError);
}

TEST_CASE("consecutive cycles agree after the forming cycle") {
    for (Family f : kAllFamilies) {
        const auto& d = family_defaults(f);
        SweepSpec s = d.sweep;
        s.cycles = 4;
        const IVTrace tr = simulate(d.params, d.initial_state, make_run_waveform(s, d.init));
        const auto per = static_cast<std::size_t>(std::llround(s.period / s.dt));
        const double scale = max_abs(tr.i, tr.t0_index);
        for (std::size_t c = 1; c + 1 < 4; ++c) {
            double dev = 0.0;
            for (std::size_t k = 0; k < per; ++k) {
                const std::size_t a = tr.t0_index + c * per + k;
                dev = std::max(dev, std::abs(tr.i[a + per] - tr.i[a]));
            }
            INFO(family_name(f), " cycle ", c + 1);
            CHECK(dev / scale < 0.01);
        }
    }
}

TEST_CASE("strukov state is affine in accumulated charge") {
    const auto& d = family_defaults(Family::StrukovTiO2);
    const IVTrace tr = run_default(Family::StrukovTiO2, 1.0);
    const FluxChargeTrace fq = integrate_flux_charge(tr, 0.0, 0.0);
    const auto& sp = d.params.as<StrukovParams>();
    // Away from the window edges the state tracks the charge linearly with
    // slope mobility * R_ON / D^2 scaled by the window value.
    double w_min = 1.0, w_max = 0.0;
    for (std::size_t k = tr.t0_index; k < tr.size(); ++k) {
        w_min = std::min(w_min, (*tr.state)[k][0]);
        w_max = std::max(w_max, (*tr.state)[k][0]);
    }
    const double w_span = w_max - w_min;
    const double q_span = *std::max_element(fq.q.begin(), fq.q.end()) - *std::min_element(fq.q.begin(), fq.q.end());
    CHECK(w_span > 0.0);
    const double slope = w_span / q_span;
    const double nominal = sp.mobility * sp.r_on / (sp.thickness * sp.thickness);
    CHECK(slope <= nominal * (1.0 + 1e-9));
    CHECK(slope >= nominal * 0.99);
    // Affine check along the whole trajectory.
    const double w0 = (*tr.state)[tr.t0_index][0];
    double worst = 0.0;
    for (std::size_t k = 0; k < fq.q.size(); ++k) {
        const double w = (*tr.state)[tr.t0_index + k][0];
        worst = std::max(worst, std::abs((w - w0) - slope * (fq.q[k] - fq.q[0])));
    }
    CHECK(worst / w_span < 0.01);
}

#include "memristor/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "memristor/error.hpp"

namespace memristor {

namespace {

template <class P>
struct FieldEntry {
    ParamField field;
    double P::*member;
};

constexpr FieldEntry<FerroelectricParams> kFerroelectricFields[] = {
    {{"g_lo", "S"}, &FerroelectricParams::g_lo},
    {{"g_hi", "S"}, &FerroelectricParams::g_hi},
    {{"c_sw", "C"}, &FerroelectricParams::c_sw},
    {{"k_fe", "1/s"}, &FerroelectricParams::k_fe},
    {{"v_c", "V"}, &FerroelectricParams::v_c},
    {{"dv", "V"}, &FerroelectricParams::dv},
    {{"v_s", "V"}, &FerroelectricParams::v_s},
    {{"creep", "1"}, &FerroelectricParams::creep},
    {{"v_a", "V"}, &FerroelectricParams::v_a},
};

constexpr FieldEntry<ThresholdSwitchParams> kThresholdFields[] = {
    {{"g_on", "S"}, &ThresholdSwitchParams::g_on},
    {{"g_off", "S"}, &ThresholdSwitchParams::g_off},
    {{"k_set", "1/s"}, &ThresholdSwitchParams::k_set},
    {{"k_reset", "1/s"}, &ThresholdSwitchParams::k_reset},
    {{"v_set", "V"}, &ThresholdSwitchParams::v_set},
    {{"v_reset", "V"}, &ThresholdSwitchParams::v_reset},
    {{"dv", "V"}, &ThresholdSwitchParams::dv},
};

constexpr FieldEntry<StrukovParams> kStrukovFields[] = {
    {{"r_on", "ohm"}, &StrukovParams::r_on},
    {{"r_off", "ohm"}, &StrukovParams::r_off},
    {{"mobility", "m^2/(V s)"}, &StrukovParams::mobility},
    {{"thickness", "m"}, &StrukovParams::thickness},
    {{"window_p", "1"}, &StrukovParams::window_p},
};

constexpr FieldEntry<BarrierParams> kBarrierFields[] = {
    {{"a_hi_pos", "A"}, &BarrierParams::a_hi_pos},
    {{"a_lo_pos", "A"}, &BarrierParams::a_lo_pos},
    {{"a_hi_neg", "A"}, &BarrierParams::a_hi_neg},
    {{"a_lo_neg", "A"}, &BarrierParams::a_lo_neg},
    {{"v_x", "V"}, &BarrierParams::v_x},
    {{"k_up", "1/s"}, &BarrierParams::k_up},
    {{"k_dn", "1/s"}, &BarrierParams::k_dn},
    {{"v_w", "V"}, &BarrierParams::v_w},
    {{"tau_ret", "s"}, &BarrierParams::tau_ret},
    {{"s_w", "1"}, &BarrierParams::s_w},
};

template <class P, std::size_t N>
std::array<ParamField, N> project(const FieldEntry<P> (&entries)[N]) {
    std::array<ParamField, N> out{};
    for (std::size_t k = 0; k < N; ++k) out[k] = entries[k].field;
    return out;
}

const auto kFerroelectricNames = project(kFerroelectricFields);
const auto kThresholdNames = project(kThresholdFields);
const auto kStrukovNames = project(kStrukovFields);
const auto kBarrierNames = project(kBarrierFields);

template <class P, std::size_t N>
double* find_member(P& p, const FieldEntry<P> (&entries)[N], std::string_view name) {
    for (const auto& e : entries) {
        if (e.field.name == name) return &(p.*e.member);
    }
    return nullptr;
}

double* param_slot(ModelParams& p, std::string_view name) {
    return std::visit(
        [&](auto& v) -> double* {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FerroelectricParams>) return find_member(v, kFerroelectricFields, name);
            else if constexpr (std::is_same_v<T, ThresholdSwitchParams>) return find_member(v, kThresholdFields, name);
            else if constexpr (std::is_same_v<T, StrukovParams>) return find_member(v, kStrukovFields, name);
            else return find_member(v, kBarrierFields, name);
        },
        p.values);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void require(bool ok, Family f, const std::string& what) {
    if (!ok) throw ConfigError(std::string(family_name(f)) + " parameters: " + what);
}

bool finite_all(const ModelParams& p) {
    for (const auto& f : param_fields(p.family)) {
        if (!std::isfinite(get_param(p, f.name))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

class FerroelectricModel final : public Model {
public:
    explicit FerroelectricModel(const FerroelectricParams& p) : p_(p) {}

    Family family() const override { return Family::Ferroelectric; }
    std::size_t state_dim() const override { return 1; }

    double current(double v, std::span<const double> s) const override {
        const double pol = s[0];
        return p_.c_sw * rate(v, pol) + (p_.g_lo + (p_.g_hi - p_.g_lo) * pol) * v;
    }

    void state_rate(double v, std::span<const double> s, std::span<double> out) const override {
        out[0] = rate(v, s[0]);
    }

private:
    double rate(double v, double pol) const {
        const double mag = std::abs(v);
        const double p_sat = 0.5 * (1.0 + std::tanh(v / p_.v_s));
        double gate = logistic((mag - p_.v_c) / p_.dv);
        if (mag > 0.0) gate += p_.creep * std::exp(p_.v_a / p_.v_c - p_.v_a / mag);
        return p_.k_fe * (p_sat - pol) * gate;
    }

    FerroelectricParams p_;
};

class ThresholdSwitchModel final : public Model {
public:
    ThresholdSwitchModel(Family f, const ThresholdSwitchParams& p) : family_(f), p_(p) {}

    Family family() const override { return family_; }
    std::size_t state_dim() const override { return 1; }

    double current(double v, std::span<const double> s) const override {
        const double w = s[0];
        return (w * p_.g_on + (1.0 - w) * p_.g_off) * v;
    }

    void state_rate(double v, std::span<const double> s, std::span<double> out) const override {
        const double w = s[0];
        out[0] = p_.k_set * logistic((v - p_.v_set) / p_.dv) * (1.0 - w) -
                 p_.k_reset * logistic((-v - p_.v_reset) / p_.dv) * w;
    }

private:
    Family family_;
    ThresholdSwitchParams p_;
};

class StrukovModel final : public Model {
public:
    explicit StrukovModel(const StrukovParams& p) : p_(p) {}

    Family family() const override { return Family::StrukovTiO2; }
    std::size_t state_dim() const override { return 1; }

    double current(double v, std::span<const double> s) const override {
        const double w = s[0];
        return v / (p_.r_on * w + p_.r_off * (1.0 - w));
    }

    void state_rate(double v, std::span<const double> s, std::span<double> out) const override {
        const double w = s[0];
        const double window = 1.0 - std::pow(std::abs(2.0 * w - 1.0), 2.0 * p_.window_p);
        out[0] = p_.mobility * p_.r_on / (p_.thickness * p_.thickness) * current(v, s) * window;
    }

private:
    StrukovParams p_;
};

class BarrierModel final : public Model {
public:
    explicit BarrierModel(const BarrierParams& p)
        : p_(p),
          log_hi_pos_(std::log(p.a_hi_pos)),
          log_lo_pos_(std::log(p.a_lo_pos)),
          log_hi_neg_(std::log(p.a_hi_neg)),
          log_lo_neg_(std::log(p.a_lo_neg)) {}

    Family family() const override { return Family::BarrierNonlinear; }
    std::size_t state_dim() const override { return 1; }

    double current(double v, std::span<const double> s) const override {
        const double x = s[0];
        if (v >= 0.0) {
            return std::exp((1.0 - x) * log_lo_pos_ + x * log_hi_pos_) * std::expm1(v / p_.v_x);
        }
        return -std::exp(x * log_lo_neg_ + (1.0 - x) * log_hi_neg_) * std::expm1(-v / p_.v_x);
    }

    void state_rate(double v, std::span<const double> s, std::span<double> out) const override {
        const double x = s[0];
        const double target = 0.5 * (1.0 + std::tanh(v / p_.v_w));
        // Retention leak acts always; trapping only moves s toward the target
        // in the direction set by the bias polarity.
        double drive = 0.0;
        if (v > 0.0) {
            drive = p_.k_up * onset(target - x);
        } else if (v < 0.0) {
            drive = -p_.k_dn * onset(x - target);
        }
        out[0] = drive - x / p_.tau_ret;
    }

private:
    /// max(g, 0) with the corner rounded over [0, s_w] by a quintic smoothstep;
    /// exactly 0 for g <= 0 and exactly g for g >= s_w.
    double onset(double g) const {
        if (g <= 0.0) return 0.0;
        if (g >= p_.s_w) return g;
        const double x = g / p_.s_w;
        return g * x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
    }

    BarrierParams p_;
    double log_hi_pos_, log_lo_pos_, log_hi_neg_, log_lo_neg_;
};

}  // namespace

double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

std::string_view family_key(Family f) {
    switch (f) {
        case Family::Ferroelectric: return "ferroelectric";
        case Family::Filamentary: return "filamentary";
        case Family::Structural: return "structural";
        case Family::StrukovTiO2: return "strukov";
        case Family::BarrierNonlinear: return "barrier";
    }
    return "unknown";
}

std::string_view family_name(Family f) {
    switch (f) {
        case Family::Ferroelectric: return "Ferroelectric";
        case Family::Filamentary: return "Filamentary";
        case Family::Structural: return "Structural";
        case Family::StrukovTiO2: return "StrukovTiO2";
        case Family::BarrierNonlinear: return "BarrierNonlinear";
    }
    return "Unknown";
}

Family parse_family(std::string_view text) {
    const std::string key = lower(text);
    for (Family f : kAllFamilies) {
        if (key == family_key(f) || key == lower(family_name(f))) return f;
    }
    throw ConfigError("unknown model family '" + std::string(text) + "'");
}

bool DeviceState::within_bounds() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double x) { return x >= 0.0 && x <= 1.0; });
}

void DeviceState::clamp() {
    for (double& x : values_) x = std::clamp(x, 0.0, 1.0);
}

std::span<const ParamField> param_fields(Family f) {
    switch (f) {
        case Family::Ferroelectric: return kFerroelectricNames;
        case Family::Filamentary:
        case Family::Structural: return kThresholdNames;
        case Family::StrukovTiO2: return kStrukovNames;
        case Family::BarrierNonlinear: return kBarrierNames;
    }
    return {};
}

double get_param(const ModelParams& p, std::string_view name) {
    auto* slot = param_slot(const_cast<ModelParams&>(p), name);
    if (!slot) {
        throw ConfigError("unknown parameter '" + std::string(name) + "' for family " +
                          std::string(family_name(p.family)));
    }
    return *slot;
}

void set_param(ModelParams& p, std::string_view name, double value) {
    auto* slot = param_slot(p, name);
    if (!slot) {
        throw ConfigError("unknown parameter '" + std::string(name) + "' for family " +
                          std::string(family_name(p.family)));
    }
    *slot = value;
}

ModelParams empty_params(Family f) {
    switch (f) {
        case Family::Ferroelectric: return {f, FerroelectricParams{}};
        case Family::Filamentary:
        case Family::Structural: return {f, ThresholdSwitchParams{}};
        case Family::StrukovTiO2: return {f, StrukovParams{}};
        case Family::BarrierNonlinear: return {f, BarrierParams{}};
    }
    throw ConfigError("unknown family");
}

std::size_t state_dimension(Family) { return 1; }

void ModelParams::validate() const {
    const Family f = family;
    const bool variant_ok = std::visit(
        [f](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            switch (f) {
                case Family::Ferroelectric: return std::is_same_v<T, FerroelectricParams>;
                case Family::Filamentary:
                case Family::Structural: return std::is_same_v<T, ThresholdSwitchParams>;
                case Family::StrukovTiO2: return std::is_same_v<T, StrukovParams>;
                case Family::BarrierNonlinear: return std::is_same_v<T, BarrierParams>;
            }
            return false;
        },
        values);
    require(variant_ok, f, "parameter set does not belong to this family");
    require(finite_all(*this), f, "all parameters must be finite");

    switch (f) {
        case Family::Ferroelectric: {
            const auto& p = as<FerroelectricParams>();
            require(p.g_hi >= p.g_lo && p.g_lo > 0.0, f, "require g_hi >= g_lo > 0");
            require(p.c_sw >= 0.0, f, "c_sw must be non-negative");
            require(p.k_fe >= 0.0, f, "k_fe must be non-negative");
            require(p.v_c > 0.0 && p.dv > 0.0 && p.v_s > 0.0, f, "v_c, dv, v_s must be positive");
            require(p.creep >= 0.0 && p.v_a > 0.0, f, "require creep >= 0 and v_a > 0");
            break;
        }
        case Family::Filamentary:
        case Family::Structural: {
            const auto& p = as<ThresholdSwitchParams>();
            require(p.g_on > p.g_off && p.g_off > 0.0, f, "require g_on > g_off > 0 (R_OFF > R_ON > 0)");
            require(p.k_set >= 0.0 && p.k_reset >= 0.0, f, "rate constants must be non-negative");
            require(p.v_set > 0.0 && p.v_reset > 0.0 && p.dv > 0.0, f,
                    "v_set, v_reset, dv must be positive");
            break;
        }
        case Family::StrukovTiO2: {
            const auto& p = as<StrukovParams>();
            require(p.r_off > p.r_on && p.r_on > 0.0, f, "require r_off > r_on > 0");
            require(p.mobility >= 0.0, f, "mobility must be non-negative");
            require(p.thickness > 0.0, f, "thickness must be positive");
            require(p.window_p >= 1.0, f, "window_p must be >= 1");
            break;
        }
        case Family::BarrierNonlinear: {
            const auto& p = as<BarrierParams>();
            require(p.a_hi_pos > p.a_lo_pos && p.a_lo_pos > 0.0, f, "require a_hi_pos > a_lo_pos > 0");
            require(p.a_hi_neg > p.a_lo_neg && p.a_lo_neg > 0.0, f, "require a_hi_neg > a_lo_neg > 0");
            require(p.v_x > 0.0 && p.v_w > 0.0, f, "v_x, v_w must be positive");
            require(p.k_up >= 0.0 && p.k_dn >= 0.0, f, "rate constants must be non-negative");
            require(p.tau_ret > 0.0, f, "tau_ret must be positive");
            require(p.s_w >= 0.0, f, "s_w must be non-negative");
            break;
        }
    }
}

std::optional<SwitchingThresholds> switching_thresholds(const ModelParams& p) {
    switch (p.family) {
        case Family::Ferroelectric: {
            const auto& fe = p.as<FerroelectricParams>();
            return SwitchingThresholds{fe.v_c, fe.v_c};
        }
        case Family::Filamentary:
        case Family::Structural: {
            const auto& th = p.as<ThresholdSwitchParams>();
            return SwitchingThresholds{th.v_set, th.v_reset};
        }
        default: return std::nullopt;
    }
}

void validate_sweep_amplitude(const ModelParams& p, double v_max_pos, double v_max_neg) {
    const auto th = switching_thresholds(p);
    if (!th) return;
    if (!(v_max_pos > th->positive) || !(v_max_neg > th->negative)) {
        throw ConfigError("sweep amplitude (+" + std::to_string(v_max_pos) + " V / -" +
                          std::to_string(v_max_neg) + " V) does not exceed the switching thresholds of " +
                          std::string(family_name(p.family)));
    }
}

std::unique_ptr<Model> make_model(const ModelParams& p) {
    p.validate();
    switch (p.family) {
        case Family::Ferroelectric: return std::make_unique<FerroelectricModel>(p.as<FerroelectricParams>());
        case Family::Filamentary:
        case Family::Structural:
            return std::make_unique<ThresholdSwitchModel>(p.family, p.as<ThresholdSwitchParams>());
        case Family::StrukovTiO2: return std::make_unique<StrukovModel>(p.as<StrukovParams>());
        case Family::BarrierNonlinear: return std::make_unique<BarrierModel>(p.as<BarrierParams>());
    }
    throw ConfigError("unknown family");
}

namespace {
void check_state(const Model& m, const DeviceState& s) {
    if (s.size() != m.state_dim()) {
        throw ConfigError("state dimension " + std::to_string(s.size()) + " does not match " +
                          std::string(family_name(m.family())) + " (expects " +
                          std::to_string(m.state_dim()) + ")");
    }
    if (!s.within_bounds()) throw ConfigError("state components must lie in [0, 1]");
}
}  // namespace

double model_current(const ModelParams& p, double v, const DeviceState& s) {
    const auto m = make_model(p);
    check_state(*m, s);
    return m->current(v, s.values());
}

std::vector<double> model_state_rate(const ModelParams& p, double v, const DeviceState& s) {
    const auto m = make_model(p);
    check_state(*m, s);
    std::vector<double> out(m->state_dim());
    m->state_rate(v, s.values(), out);
    return out;
}

}  // namespace memristor

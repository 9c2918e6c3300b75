#pragma once

// Behavioral memristor models.
//
// Every model is a voltage-driven state-space system
//
//     I = f(V, s),    ds/dt = g(V, s),    s in [0, 1]^k
//
// and is a pure function of (V, s, params).

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace memristor {

enum class Family { Ferroelectric, Filamentary, Structural, StrukovTiO2, BarrierNonlinear };

inline constexpr std::array<Family, 5> kAllFamilies = {
    Family::StrukovTiO2, Family::Filamentary, Family::Structural,
    Family::Ferroelectric, Family::BarrierNonlinear};

/// Canonical short name used in config files and on the command line.
std::string_view family_key(Family f);
/// Display name ("StrukovTiO2", "BarrierNonlinear", ...).
std::string_view family_name(Family f);
/// Accepts both the short key and the display name, case-insensitively.
Family parse_family(std::string_view text);

/// Internal state vector; every component is dimensionless and lives in [0, 1].
class DeviceState {
public:
    DeviceState() = default;
    explicit DeviceState(std::vector<double> values) : values_(std::move(values)) {}
    DeviceState(std::initializer_list<double> values) : values_(values) {}

    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }
    [[nodiscard]] std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    [[nodiscard]] bool within_bounds() const;
    void clamp();

    friend bool operator==(const DeviceState&, const DeviceState&) = default;

private:
    std::vector<double> values_;
};

/// Polarization-switching device with P-dependent leakage and Merz-type creep.
struct FerroelectricParams {
    double g_lo;   ///< S, leakage conductance at P = 0
    double g_hi;   ///< S, leakage conductance at P = 1
    double c_sw;   ///< C, switching charge for a full polarization reversal
    double k_fe;   ///< 1/s
    double v_c;    ///< V, coercive voltage
    double dv;     ///< V, width of the coercive gate
    double v_s;    ///< V, slope of the saturation polarization
    double creep;  ///< dimensionless creep weight at |V| = v_c
    double v_a;    ///< V, activation voltage of the creep term
};

/// Shared skeleton of the filamentary and structural families.
struct ThresholdSwitchParams {
    double g_on;     ///< S
    double g_off;    ///< S
    double k_set;    ///< 1/s
    double k_reset;  ///< 1/s
    double v_set;    ///< V
    double v_reset;  ///< V, magnitude of the negative reset threshold
    double dv;       ///< V, logistic gate width
};

struct StrukovParams {
    double r_on;       ///< ohm
    double r_off;      ///< ohm
    double mobility;   ///< m^2 / (V s), dopant mobility
    double thickness;  ///< m
    double window_p;   ///< Joglekar window exponent
};

/// Barrier-switching stand-in: trapped-charge fraction s modulates the barrier
/// of two back-to-back diode paths. Positive conduction interpolates
/// geometrically between the low and high paths with weight s, negative
/// conduction with weight (1 - s).
struct BarrierParams {
    double a_hi_pos;  ///< A
    double a_lo_pos;  ///< A
    double a_hi_neg;  ///< A
    double a_lo_neg;  ///< A
    double v_x;       ///< V, diode slope
    double k_up;      ///< 1/s, trapping rate
    double k_dn;      ///< 1/s, de-trapping rate
    double v_w;       ///< V, width of the target-state curve
    double tau_ret;   ///< s, retention time constant
    double s_w;       ///< width of the rounded trapping onset, in units of s
};

using ParamValues =
    std::variant<FerroelectricParams, ThresholdSwitchParams, StrukovParams, BarrierParams>;

struct ModelParams {
    Family family;
    ParamValues values;

    /// Throws ConfigError when the values do not satisfy the family invariants.
    void validate() const;

    template <class P>
    [[nodiscard]] const P& as() const { return std::get<P>(values); }
    template <class P>
    P& as() { return std::get<P>(values); }
};

/// Name/unit/member table used for config parsing, overrides and reporting.
struct ParamField {
    std::string_view name;
    std::string_view unit;
};

std::span<const ParamField> param_fields(Family f);
double get_param(const ModelParams& p, std::string_view name);
void set_param(ModelParams& p, std::string_view name, double value);

/// Zero-initialized parameter set of the right variant alternative.
ModelParams empty_params(Family f);

/// Dimension of the internal state vector of a family.
std::size_t state_dimension(Family f);

/// Switching thresholds a sweep amplitude must exceed (empty if the family
/// has none). Pairs are (positive threshold, negative threshold magnitude).
struct SwitchingThresholds {
    double positive = 0.0;
    double negative = 0.0;
};
std::optional<SwitchingThresholds> switching_thresholds(const ModelParams& p);

/// Throws ConfigError unless v_max_pos / v_max_neg exceed every threshold.
void validate_sweep_amplitude(const ModelParams& p, double v_max_pos, double v_max_neg);

/// Abstract behavioral interface.
class Model {
public:
    virtual ~Model() = default;

    [[nodiscard]] virtual Family family() const = 0;
    [[nodiscard]] virtual std::size_t state_dim() const = 0;
    /// Terminal current in ampere at voltage v.
    [[nodiscard]] virtual double current(double v, std::span<const double> s) const = 0;
    /// Writes ds/dt (1/s) into out.
    virtual void state_rate(double v, std::span<const double> s, std::span<double> out) const = 0;
};

std::unique_ptr<Model> make_model(const ModelParams& p);

double model_current(const ModelParams& p, double v, const DeviceState& s);
std::vector<double> model_state_rate(const ModelParams& p, double v, const DeviceState& s);

/// Logistic function.
double logistic(double x);

}  // namespace memristor

#include "memristor/report.hpp"

#include <algorithm>
#include <cmath>

#include "memristor/trace_io.hpp"

namespace memristor {

using nlohmann::ordered_json;

namespace {

/// JSON has no infinities or NaN; those become null.
ordered_json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

ordered_json pair_json(const PairMatch& p) {
    ordered_json j;
    j["first"] = branch_name(p.first);
    j["second"] = branch_name(p.second);
    j["samples"] = p.samples;
    j["matched_fraction"] = num(p.matched_fraction);
    j["overlap_fraction"] = p.overlap_fraction ? num(*p.overlap_fraction) : ordered_json(nullptr);
    j["v_extremum"] = num(p.v_extremum);
    j["fraction_near_extremum"] = num(p.fraction_near_extremum);
    j["fraction_elsewhere"] = num(p.fraction_elsewhere);
    j["min_match_v"] = num(p.min_match_v);
    return j;
}

ordered_json loop_json(const PolarityLoop& l) {
    return ordered_json{{"area", num(l.area)}, {"normalized", num(l.normalized)}, {"branch_crossing", l.branch_crossing}};
}

ordered_json state_json(const DeviceState& s) {
    return std::vector<double>(s.values().begin(), s.values().end());
}

}  // namespace

ordered_json to_json(const ClassificationReport& r) {
    ordered_json j;
    j["label"] = label_name(r.label);
    j["analyzed_cycle"] = r.analyzed_cycle;
    static const char* names[] = {"well_formed", "diode_like", "iv_hysteresis", "fq_hysteresis"};
    ordered_json crit = ordered_json::array();
    for (std::size_t k = 0; k < 4; ++k) {
        crit.push_back({{"index", k + 1},
                        {"name", names[k]},
                        {"passed", r.criteria[k].passed},
                        {"evidence", num(r.criteria[k].evidence)},
                        {"detail", r.criteria[k].detail}});
    }
    j["criteria"] = crit;
    j["iv_hysteresis_area"] = num(r.iv_hysteresis_area);
    j["iv"] = {{"cycle", r.iv.cycle},
               {"positive", loop_json(r.iv.positive)},
               {"negative", loop_json(r.iv.negative)},
               {"origin_crossing", r.iv.origin_crossing},
               {"crossing", r.iv.crossing},
               {"pinched", r.iv.pinched},
               {"origin_current", num(r.iv.origin_current)}};
    ordered_json cycles = ordered_json::array();
    for (const auto& a : r.fq_loop_area) {
        cycles.push_back({{"cycle", a.cycle}, {"signed_area", num(a.signed_area)}, {"normalized", num(a.normalized)}});
    }
    j["fq_loop_area"] = cycles;
    j["fq_area_normalized"] = num(r.fq_area_normalized);
    j["rectification"] = num(r.rectification);
    j["superlinearity"] = num(r.superlinearity);
    ordered_json roles = ordered_json::array();
    for (const auto& b : r.branch_roles) {
        roles.push_back({{"branch", branch_name(b.branch)},
                         {"role", role_name(b.role)},
                         {"valid_samples", b.valid_samples},
                         {"residual", num(b.residual)},
                         {"monotone_fraction", num(b.monotone_fraction)},
                         {"mean_m", num(b.mean_m)}});
    }
    j["branch_roles"] = roles;
    j["matching"] = {{"positive", pair_json(r.matching.positive)},
                     {"negative", pair_json(r.matching.negative)},
                     {"degenerate", r.matching.degenerate}};
    const Tolerances& t = r.tolerances;
    j["tolerances"] = {{"eps_hys", t.eps_hys},
                       {"r_tol", t.r_tol},
                       {"m_tol", t.m_tol},
                       {"v_eps", t.v_eps},
                       {"v_eps_abs", num(r.v_eps_abs)},
                       {"dq_tol", t.dq_tol},
                       {"dq_tol_abs", num(r.dq_tol_abs)},
                       {"i_origin_tol", t.i_origin_tol},
                       {"i_origin_abs", num(r.i_origin_abs)},
                       {"iv_tol", t.iv_tol},
                       {"filter_window", t.filter_window}};
    return j;
}

ordered_json to_json(const BenchReport& b) {
    ordered_json j;
    j["family"] = family_key(b.family);
    const RatioReport& r = b.ratio;
    ordered_json ratio;
    ratio["r_off"] = num(r.r_off);
    ratio["r_on"] = num(r.r_on);
    ratio["ratio"] = num(r.ratio);
    ratio["ratio_negative_read"] = num(r.ratio_negative);
    ratio["i_lrs"] = num(r.i_lrs);
    ratio["i_hrs"] = num(r.i_hrs);
    ratio["s_lrs"] = state_json(r.s_lrs);
    ratio["s_hrs"] = state_json(r.s_hrs);
    ratio["read_drift"] = num(r.read_drift);
    ratio["disturb"] = r.disturb;
    if (r.expected) {
        ratio["ratio_range_expected"] = {r.expected->low, r.expected->high};
    } else {
        ratio["ratio_range_expected"] = nullptr;
    }
    ratio["in_expected_range"] = r.in_expected_range;
    j["r_off_r_on"] = ratio;

    const EnduranceReport& e = b.endurance;
    j["endurance"] = {{"cycles_tested", e.cycles_tested},
                      {"deviations", e.deviations},
                      {"max_deviation", num(e.max_deviation)},
                      {"stable", e.stable},
                      {"industrial_threshold", e.industrial_threshold},
                      {"target_threshold", e.target_threshold},
                      {"note", e.note}};

    const RetentionReport& t = b.retention;
    j["retention"] = {{"horizon", t.horizon},
                      {"closed_form", t.closed_form},
                      {"t_10pct", t.t_10pct ? num(*t.t_10pct) : ordered_json(nullptr)},
                      {"exceeds_horizon", !t.t_10pct.has_value()},
                      {"ten_year_threshold", kTenYears},
                      {"meets_ten_years", t.meets_ten_years},
                      {"t", t.t},
                      {"s", t.s}};

    const ReadDisturbReport& d = b.read_disturb;
    j["read_disturb"] = {{"per_read", d.per_read},
                         {"cumulative", num(d.cumulative)},
                         {"max_per_read", num(d.max_per_read)}};
    return j;
}

ordered_json to_json(const GateRecipe& recipe, const GateVerification& v) {
    ordered_json j;
    j["name"] = recipe.name;
    j["description"] = recipe.description;
    static const char* rows[] = {"00", "01", "10", "11"};
    ordered_json table = ordered_json::array();
    for (std::size_t k = 0; k < 4; ++k) {
        table.push_back({{"ab", rows[k]},
                         {"output", v.table.outputs[k]},
                         {"target", v.target[k]},
                         {"match", v.row_match[k]},
                         {"read_current", num(v.table.currents[k])}});
    }
    j["rows"] = table;
    j["all_match"] = v.all_match;
    return j;
}

ordered_json branch_summaries(const IVTrace& trace, const BranchSegmentation& seg, const ClassificationReport& r) {
    ordered_json out = ordered_json::array();
    for (const auto& info : r.branch_roles) {
        const Segment* s = seg.find(r.analyzed_cycle, info.branch);
        if (!s) continue;
        double vmin = trace.v[seg.offset + s->begin], vmax = vmin;
        double imax = 0.0;
        for (std::size_t k = s->begin; k < s->end; ++k) {
            vmin = std::min(vmin, trace.v[seg.offset + k]);
            vmax = std::max(vmax, trace.v[seg.offset + k]);
            imax = std::max(imax, std::abs(trace.i[seg.offset + k]));
        }
        out.push_back({{"branch", branch_name(info.branch)},
                       {"cycle", r.analyzed_cycle},
                       {"samples", s->size()},
                       {"v_min", num(vmin)},
                       {"v_max", num(vmax)},
                       {"i_abs_max", num(imax)},
                       {"role", role_name(info.role)},
                       {"mean_m", num(info.mean_m)}});
    }
    return out;
}

ordered_json ReportDocument::to_json() const {
    ordered_json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    if (config) j["config"] = *config;
    if (classification) j["classification"] = *classification;
    if (branches) j["branches"] = *branches;
    if (bench) j["bench"] = *bench;
    if (gates) j["gates"] = *gates;
    if (!warnings.empty()) j["warnings"] = warnings;
    return j;
}

std::string ReportDocument::dump() const { return to_json().dump(2) + "\n"; }

void export_report(const ReportDocument& doc, const std::string& path) { write_text_file(path, doc.dump()); }

}  // namespace memristor

#include "memristor/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "memristor/bench.hpp"
#include "memristor/config.hpp"
#include "memristor/error.hpp"
#include "memristor/gates.hpp"
#include "memristor/report.hpp"
#include "memristor/trace_io.hpp"

namespace memristor {

namespace {

struct Options {
    std::string config;
    std::string model;
    std::string in;
    std::string out;
    std::string fq;
    std::string plot_prefix;
    std::vector<std::string> tolerances;
};

void add_common(CLI::App* sub, Options& o, bool with_in) {
    sub->add_option("--config", o.config, "JSON run configuration");
    sub->add_option("--model", o.model, "device family: strukov, filamentary, structural, ferroelectric, barrier");
    if (with_in) sub->add_option("--in", o.in, "input file");
    sub->add_option("--out", o.out, "output file");
    sub->add_option("--tolerance", o.tolerances, "analysis tolerance override KEY=VALUE (repeatable)");
}

RunConfig resolve_config(const Options& o) {
    std::optional<Family> family;
    if (!o.model.empty()) family = parse_family(o.model);
    RunConfig cfg;
    if (!o.config.empty()) {
        cfg = load_config(o.config, family);
    } else if (family) {
        cfg = default_config(*family);
    } else {
        throw ConfigError("either --model or --config is required");
    }
    for (const auto& t : o.tolerances) apply_tolerance_override(cfg.tolerances, t);
    if (!o.out.empty()) cfg.output.report = o.out;
    if (!o.fq.empty()) cfg.output.fq = o.fq;
    if (!o.plot_prefix.empty()) cfg.output.plot_prefix = o.plot_prefix;
    return cfg;
}

/// Tolerances for imported traces: defaults plus config file and flags.
Tolerances resolve_tolerances(const Options& o, std::optional<RunConfig>& cfg) {
    if (!o.config.empty() || !o.model.empty()) {
        cfg = resolve_config(o);
        return cfg->tolerances;
    }
    Tolerances t;
    for (const auto& s : o.tolerances) apply_tolerance_override(t, s);
    return t;
}

IVTrace simulate_config(const RunConfig& cfg) {
    return simulate(cfg.settings.params, cfg.settings.initial_state,
                    make_run_waveform(cfg.settings.sweep, cfg.settings.init));
}

void emit(const ReportDocument& doc, const std::optional<std::string>& path, std::ostream& out) {
    if (path) {
        export_report(doc, *path);
    } else {
        out << doc.dump();
    }
}

struct Analysis {
    IVTrace trace;
    ClassificationReport report;
    BranchSegmentation seg;
    FluxChargeTrace fq;
};

Analysis analyze_trace(IVTrace trace, const Tolerances& tol, double phi0, double q0) {
    Analysis a{std::move(trace), {}, {}, {}};
    a.report = classify(a.trace, tol, phi0, q0);
    a.seg = segment_branches(a.trace, a.report.v_eps_abs, tol.filter_window);
    a.fq = integrate_flux_charge(a.trace, phi0, q0);
    return a;
}

Analysis load_or_simulate(const Options& o, ReportDocument& doc, std::optional<RunConfig>& cfg) {
    if (!o.in.empty()) {
        const Tolerances tol = resolve_tolerances(o, cfg);
        IVTrace tr = import_trace(o.in, &doc.warnings);
        nlohmann::ordered_json echo;
        echo["input"] = o.in;
        if (cfg) echo["analysis"] = config_echo(*cfg)["analysis"];
        doc.config = echo;
        return analyze_trace(std::move(tr), tol, cfg ? cfg->phi0 : 0.0, cfg ? cfg->q0 : 0.0);
    }
    cfg = resolve_config(o);
    doc.config = config_echo(*cfg);
    return analyze_trace(simulate_config(*cfg), cfg->tolerances, cfg->phi0, cfg->q0);
}

std::optional<std::string> report_path(const Options& o, const std::optional<RunConfig>& cfg) {
    if (!o.out.empty()) return o.out;
    if (cfg && cfg->output.report) return cfg->output.report;
    return std::nullopt;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    const RunConfig cfg = resolve_config(o);
    const IVTrace tr = simulate_config(cfg);
    const auto path = !o.out.empty() ? std::optional<std::string>(o.out) : cfg.output.trace;
    if (path) {
        export_trace(tr, *path);
    } else {
        write_trace(out, tr);
    }
    return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
    ReportDocument doc;
    std::optional<RunConfig> cfg;
    const Analysis a = load_or_simulate(o, doc, cfg);
    doc.classification = to_json(a.report);
    doc.branches = branch_summaries(a.trace, a.seg, a.report);

    std::optional<std::string> fq = o.fq.empty() ? std::nullopt : std::optional<std::string>(o.fq);
    std::optional<std::string> plot = o.plot_prefix.empty() ? std::nullopt : std::optional<std::string>(o.plot_prefix);
    if (cfg) {
        if (!fq) fq = cfg->output.fq;
        if (!plot) plot = cfg->output.plot_prefix;
    }
    if (fq) export_fq(a.fq, *fq);
    if (plot) export_plot_data(a.trace, a.fq, a.seg, a.report.branch_roles, *plot);
    emit(doc, report_path(o, cfg), out);
    return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
    ReportDocument doc;
    std::optional<RunConfig> cfg;
    const Analysis a = load_or_simulate(o, doc, cfg);
    doc.classification = to_json(a.report);
    if (const auto path = report_path(o, cfg)) export_report(doc, *path);
    out << label_name(a.report.label) << '\n';
    return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
    const RunConfig cfg = resolve_config(o);
    ReportDocument doc;
    doc.config = config_echo(cfg);
    doc.bench = to_json(run_bench(cfg.settings.params, cfg.settings.initial_state, cfg.settings, cfg.bench));
    emit(doc, report_path(o, cfg), out);
    return kExitOk;
}

int cmd_gates(const Options& o, std::ostream& out) {
    const RunConfig cfg = (!o.model.empty() || !o.config.empty()) ? resolve_config(o)
                                                                  : default_config(Family::BarrierNonlinear);
    std::vector<GateRecipe> recipes = o.in.empty() ? shipped_recipes() : std::vector<GateRecipe>{load_recipe(o.in)};
    ReportDocument doc;
    doc.config = config_echo(cfg);
    nlohmann::ordered_json gates = nlohmann::ordered_json::array();
    bool all = true;
    for (const auto& r : recipes) {
        const GateVerification v = verify_recipe(cfg.settings.params, r);
        all = all && v.all_match;
        gates.push_back(to_json(r, v));
    }
    doc.gates = gates;
    emit(doc, report_path(o, cfg), out);
    return all ? kExitOk : kExitFailure;
}

int cmd_demo(const Options& o, std::ostream& out) {
    namespace fs = std::filesystem;
    const fs::path dir = o.out.empty() ? fs::path("demo_out") : fs::path(o.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

    nlohmann::ordered_json summary;
    summary["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    nlohmann::ordered_json families = nlohmann::ordered_json::array();
    int linear = 0, nonlinear = 0;
    for (Family f : kAllFamilies) {
        RunConfig cfg = default_config(f);
        for (const auto& t : o.tolerances) apply_tolerance_override(cfg.tolerances, t);
        const std::string key(family_key(f));
        const Analysis a = analyze_trace(simulate_config(cfg), cfg.tolerances, cfg.phi0, cfg.q0);

        ReportDocument doc;
        doc.config = config_echo(cfg);
        doc.classification = to_json(a.report);
        doc.branches = branch_summaries(a.trace, a.seg, a.report);
        doc.bench = to_json(run_bench(cfg.settings.params, cfg.settings.initial_state, cfg.settings, cfg.bench));
        const fs::path report = dir / (key + ".report.json");
        export_report(doc, report.string());
        export_plot_data(a.trace, a.fq, a.seg, a.report.branch_roles, (dir / key).string());

        if (a.report.label == Label::LinearMemristor) ++linear;
        if (a.report.label == Label::NonlinearMemristor) ++nonlinear;
        families.push_back({{"family", key},
                            {"label", label_name(a.report.label)},
                            {"fq_area_normalized", a.report.fq_area_normalized},
                            {"report", report.filename().string()}});
        out << key << ": " << label_name(a.report.label) << '\n';
    }
    summary["families"] = families;
    summary["linear_count"] = linear;
    summary["nonlinear_count"] = nonlinear;

    const RunConfig barrier = default_config(Family::BarrierNonlinear);
    nlohmann::ordered_json gates = nlohmann::ordered_json::array();
    bool all = true;
    for (const auto& r : shipped_recipes()) {
        const GateVerification v = verify_recipe(barrier.settings.params, r);
        all = all && v.all_match;
        gates.push_back(to_json(r, v));
    }
    ReportDocument gate_doc;
    gate_doc.gates = gates;
    export_report(gate_doc, (dir / "gates.report.json").string());
    summary["gates_all_match"] = all;
    write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");
    out << "gates: " << (all ? "all tables match" : "mismatch") << '\n';
    return all ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Memristor simulation, flux-charge analysis and benchmarking"};
    app.require_subcommand(1);
    Options o;

    auto* simulate_cmd = app.add_subcommand("simulate", "simulate a sweep and write the t,v,i trace");
    add_common(simulate_cmd, o, false);
    auto* analyze_cmd = app.add_subcommand("analyze", "full flux-charge analysis of a trace");
    add_common(analyze_cmd, o, true);
    analyze_cmd->add_option("--fq", o.fq, "write t,phi,q to this file");
    analyze_cmd->add_option("--plot-prefix", o.plot_prefix, "write <prefix>_iv.csv and <prefix>_fq.csv");
    auto* classify_cmd = app.add_subcommand("classify", "print the memristor label of a trace");
    add_common(classify_cmd, o, true);
    auto* bench_cmd = app.add_subcommand("bench", "R_OFF/R_ON, endurance, retention and read disturb");
    add_common(bench_cmd, o, false);
    auto* gates_cmd = app.add_subcommand("gates", "verify gate recipes (shipped set or --in recipe)");
    add_common(gates_cmd, o, true);
    auto* demo_cmd = app.add_subcommand("demo", "run every family end to end into --out DIR");
    demo_cmd->add_option("--out", o.out, "output directory (default demo_out)");
    demo_cmd->add_option("--tolerance", o.tolerances, "analysis tolerance override KEY=VALUE (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*simulate_cmd) return cmd_simulate(o, out);
        if (*analyze_cmd) return cmd_analyze(o, out);
        if (*classify_cmd) return cmd_classify(o, out);
        if (*bench_cmd) return cmd_bench(o, out);
        if (*gates_cmd) return cmd_gates(o, out);
        if (*demo_cmd) return cmd_demo(o, out);
    } catch (const NumericalInstabilityError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace memristor

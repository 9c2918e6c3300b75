// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. argv[1] is the path of the CLI binary.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "memristor/bench.hpp"
#include "memristor/defaults.hpp"
#include "memristor/fluxq.hpp"
#include "memristor/gates.hpp"
#include "memristor/geometry.hpp"

using namespace memristor;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::string cli_path;

IVTrace default_trace(Family f, double dt_scale = 1.0) {
    const auto& d = family_defaults(f);
    SweepSpec s = d.sweep;
    s.dt *= dt_scale;
    return simulate(d.params, d.initial_state, make_run_waveform(s, d.init));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_demo(const fs::path& dir) {
    fs::remove_all(dir);
    const std::string cmd = "\"" + cli_path + "\" demo --out \"" + dir.string() + "\" > \"" +
                            (dir.parent_path() / (dir.filename().string() + ".log")).string() + "\" 2>&1";
    return std::system(cmd.c_str());
}

fs::path scratch() {
    const fs::path p = fs::temp_directory_path() / "memristor_acceptance";
    fs::create_directories(p);
    return p;
}

void criterion_1(Outcome& o) {
    const fs::path dir = scratch() / "demo_labels";
    const int rc = run_demo(dir);
    o.require(rc == 0, "demo exit code " + std::to_string(rc));
    if (rc != 0) return;
    const struct {
        const char* key;
        const char* label;
    } expect[] = {{"strukov", "LinearMemristor"},
                  {"filamentary", "LinearMemristor"},
                  {"structural", "LinearMemristor"},
                  {"ferroelectric", "LinearMemristor"},
                  {"barrier", "NonlinearMemristor"}};
    for (const auto& e : expect) {
        const auto j = nlohmann::json::parse(slurp(dir / (std::string(e.key) + ".report.json")));
        const auto& c = j["classification"];
        const std::string label = c["label"];
        const double area = c["fq_area_normalized"];
        o.detail << ' ' << e.key << '=' << label << "(fq " << area << ')';
        o.require(label == e.label, std::string(e.key) + " label");
        if (std::string(e.key) == "barrier") o.require(area > 0.02, "barrier area > 0.02");
        if (std::string(e.key) == "strukov") o.require(area < 0.002, "strukov area < 0.002");
    }
}

void criterion_2(Outcome& o) {
    const double r = 1000.0;
    const std::size_t n = 10000;
    const double dt = 2.0 * std::numbers::pi / static_cast<double>(n - 1);
    IVTrace tr;
    tr.dt = dt;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        tr.t.push_back(t);
        tr.v.push_back(std::sin(t));
        tr.i.push_back(std::sin(t) / r);
    }
    const auto fq = integrate_flux_charge(tr);
    double e_phi = 0.0, e_q = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double phi = 1.0 - std::cos(tr.t[k]);
        e_phi = std::max(e_phi, std::abs(fq.phi[k] - phi));
        e_q = std::max(e_q, std::abs(fq.q[k] - phi / r));
    }
    e_phi /= 2.0;
    e_q /= 2.0 / r;
    const auto prof = memristance(fq, resolve_dq_tol(fq, 1e-3));
    double e_m = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (prof.valid[k]) e_m = std::max(e_m, std::abs(prof.m[k] - r) / r);
    }
    o.detail << " phi err " << e_phi << ", q err " << e_q << ", M err " << e_m;
    o.require(e_phi < 1e-6 && e_q < 1e-6, "flux/charge within 1e-6");
    o.require(e_m < 1e-6, "M within 1e-6 of R");
}

void criterion_3(Outcome& o) {
    const auto rep = classify(default_trace(Family::BarrierNonlinear));
    const BranchRole expect[4] = {BranchRole::Write, BranchRole::Read, BranchRole::Write, BranchRole::Read};
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& b = rep.branch_roles[k];
        o.detail << ' ' << branch_name(b.branch) << '=' << role_name(b.role) << "(res " << b.residual << ')';
        o.require(b.role == expect[k], branch_name(b.branch) + " role");
        if (expect[k] == BranchRole::Read) o.require(b.residual < 1e-3, "read residual < 1e-3");
    }
}

void criterion_4(Outcome& o) {
    {
        const auto rep = classify(default_trace(Family::StrukovTiO2));
        const auto& m = rep.matching;
        o.detail << " strukov matched " << m.positive.matched_fraction << '/' << m.negative.matched_fraction;
        o.require(m.positive.matched_fraction >= 0.95, "strukov B1-B2 >= 0.95");
        o.require(m.negative.matched_fraction >= 0.95, "strukov B3-B4 >= 0.95");
        o.require(rep.tolerances.m_tol == 0.05, "5% tolerance");
    }
    {
        const auto rep = classify(default_trace(Family::BarrierNonlinear));
        const auto& m = rep.matching;
        o.detail << "; barrier near-extremum " << m.positive.fraction_near_extremum << '/'
                 << m.negative.fraction_near_extremum << ", elsewhere " << m.positive.fraction_elsewhere << '/'
                 << m.negative.fraction_elsewhere << ", min |V| " << m.positive.min_match_v;
        for (const PairMatch* p : {&m.positive, &m.negative}) {
            o.require(p->fraction_near_extremum > 0.0, "barrier has matches");
            o.require(p->fraction_elsewhere == 0.0, "barrier matches only near extremum");
            o.require(p->min_match_v >= 0.95 * p->v_extremum, "matches within 5% of Vmax");
        }
    }
}

void criterion_5(Outcome& o) {
    for (Family f : {Family::Filamentary, Family::Structural}) {
        const auto rep = classify(default_trace(f));
        o.detail << ' ' << family_key(f) << " crossing=" << rep.iv.crossing;
        o.require(rep.iv.crossing, std::string(family_key(f)) + " crossing");
    }
    {
        const auto rep = classify(default_trace(Family::BarrierNonlinear));
        o.detail << " barrier crossing=" << rep.iv.crossing << " pinched=" << rep.iv.pinched << "(I0 "
                 << rep.iv.origin_current << ')';
        o.require(!rep.iv.crossing, "barrier not crossed");
        o.require(rep.iv.pinched, "barrier pinched");
    }
    {
        const auto& d = family_defaults(Family::Ferroelectric);
        const IVTrace tr = default_trace(Family::Ferroelectric);
        const auto rep = classify(tr);
        const auto seg = segment_branches(tr, rep.v_eps_abs);
        const double gap = near_origin_overlap(tr, seg, 0.1 * d.params.as<FerroelectricParams>().v_c);
        o.detail << " ferroelectric near-origin gap " << gap;
        o.require(gap < 1e-3, "ferroelectric overlap near origin");
    }
}

void criterion_6(Outcome& o) {
    const struct {
        Family f;
        double lo, hi;
    } ranges[] = {{Family::Ferroelectric, 1.0, 1e1},
                  {Family::Structural, 1e2, 1e3},
                  {Family::Filamentary, 1e2, 1e5},
                  {Family::BarrierNonlinear, 1e1, 1e3}};
    for (const auto& r : ranges) {
        const RatioReport rep = roff_ron(r.f);
        o.detail << ' ' << family_key(r.f) << '=' << rep.ratio;
        o.require(rep.ratio >= r.lo && rep.ratio <= r.hi, std::string(family_key(r.f)) + " ratio in range");
    }
}

void criterion_7(Outcome& o) {
    const auto& fe = family_defaults(Family::Ferroelectric);
    const auto fe_rep = read_disturb(fe.params, roff_ron(Family::Ferroelectric).s_hrs, fe.read_v, fe.read_pulse, 10);
    double fe_min = fe_rep.per_read.front();
    for (double x : fe_rep.per_read) fe_min = std::min(fe_min, x);

    const auto& b = family_defaults(Family::BarrierNonlinear);
    const RatioReport ratio = roff_ron(Family::BarrierNonlinear);
    const auto lrs = read_disturb(b.params, ratio.s_lrs, b.read_v, b.read_pulse, 10);
    const auto hrs = read_disturb(b.params, ratio.s_hrs, -b.read_v, b.read_pulse, 10);
    const double b_max = std::max(lrs.max_per_read, hrs.max_per_read);
    o.detail << " ferroelectric min per-read " << fe_min << ", barrier max per-read " << b_max;
    o.require(fe_min > 1e-4, "ferroelectric drift > 1e-4");
    o.require(b_max < 1e-6, "barrier drift < 1e-6");
}

void criterion_8(Outcome& o) {
    const auto& params = family_defaults(Family::BarrierNonlinear).params;
    std::vector<std::array<int, 4>> orders;
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (const auto& r : shipped_recipes()) {
        const GateVerification v = verify_recipe(params, r);
        o.detail << ' ' << r.name << '=';
        for (int bit : v.table.outputs) o.detail << bit;
        o.require(v.all_match, r.name + " matches target");
        for (const auto& ord : orders) {
            if (truth_table(params, r, ord).outputs != v.table.outputs) {
                o.require(false, r.name + " order invariance");
                break;
            }
        }
    }
    o.detail << " (24 row orders each)";
}

double aligned_error(const IVTrace& a, const IVTrace& b) {
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; a.t0_index + k < a.size(); ++k) {
        const double ia = a.i[a.t0_index + k];
        err = std::max(err, std::abs(ia - b.i[b.t0_index + 2 * k]));
        scale = std::max(scale, std::abs(ia));
    }
    return err / scale;
}

void criterion_9(Outcome& o) {
    // Self-convergence at dt, dt/2, dt/4 with samples aligned from t0.
    // A family whose coarse error already sits at round-off is converged and
    // has no measurable order.
    constexpr double kRoundOff = 1e-12;
    for (Family f : kAllFamilies) {
        const IVTrace h1 = default_trace(f, 1.0);
        const IVTrace h2 = default_trace(f, 0.5);
        const IVTrace h4 = default_trace(f, 0.25);
        const double e1 = aligned_error(h1, h2);
        const double e2 = aligned_error(h2, h4);
        o.detail << ' ' << family_key(f);
        if (e1 < kRoundOff) {
            o.detail << "=round-off(" << e1 << ')';
            continue;
        }
        const double order = std::log2(e1 / e2);
        o.detail << '=' << order;
        o.require(order >= 3.0, std::string(family_key(f)) + " order >= 3");
    }

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> rad(0.2, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + 50 * static_cast<std::size_t>(trial);
        std::vector<double> x(n), y(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            const double r = rad(rng);
            x[k] = 10.0 + r * std::cos(a);
            y[k] = -4.0 + r * std::sin(a);
        }
        long double tri = 0.0L;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            tri += 0.5L * ((static_cast<long double>(x[k]) - x[0]) * (static_cast<long double>(y[k + 1]) - y[0]) -
                           (static_cast<long double>(y[k]) - y[0]) * (static_cast<long double>(x[k + 1]) - x[0]));
        }
        const double oracle = static_cast<double>(tri);
        worst = std::max(worst, std::abs(shoelace_area(x, y) - oracle) / std::abs(oracle));
    }
    o.detail << "; shoelace rel err " << worst;
    o.require(worst < 1e-9, "shoelace oracle");

    for (Family f : {Family::StrukovTiO2, Family::BarrierNonlinear}) {
        const IVTrace tr = default_trace(f);
        const auto a = classify(tr, {}, 0.0, 0.0);
        const auto b = classify(tr, {}, 5.0, -0.01);
        const bool same = a.label == b.label && a.iv_hysteresis_area == b.iv_hysteresis_area &&
                          std::abs(a.fq_area_normalized - b.fq_area_normalized) <=
                              1e-6 * std::max(a.fq_area_normalized, 1e-6);
        o.require(same, std::string(family_key(f)) + " offset invariance");
    }
    o.detail << "; offsets invariant";
}

void criterion_10(Outcome& o) {
    const fs::path a = scratch() / "demo_a";
    const fs::path b = scratch() / "demo_b";
    o.require(run_demo(a) == 0 && run_demo(b) == 0, "demo runs");
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        const fs::path other = b / entry.path().filename();
        ++files;
        if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
            o.require(false, entry.path().filename().string() + " identical");
        }
    }
    std::size_t files_b = 0;
    for ([[maybe_unused]] const auto& entry : fs::directory_iterator(b)) ++files_b;
    o.require(files == files_b && files > 0, "same file set");
    o.detail << ' ' << files << " files compared";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-memristor-cli>\n";
        return 2;
    }
    cli_path = argv[1];

    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"classification dichotomy", criterion_1},
        {"integration oracle", criterion_2},
        {"branch-role contract", criterion_3},
        {"memristance matching", criterion_4},
        {"loop-shape taxonomy", criterion_5},
        {"benchmark ranges", criterion_6},
        {"read disturb asymmetry", criterion_7},
        {"gates", criterion_8},
        {"numerics", criterion_9},
        {"determinism", criterion_10},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            criteria[k].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << ']';
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << (k + 1) << ' ' << criteria[k].first << ':'
                  << o.detail.str() << std::endl;
    }
    return failures == 0 ? 0 : 1;
}

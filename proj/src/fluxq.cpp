#include "memristor/fluxq.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "memristor/error.hpp"
#include "memristor/geometry.hpp"

namespace memristor {

namespace {

constexpr double kMatchWindow = 0.05;
constexpr double kWriteMonotone = 0.9;
constexpr double kOriginWindow = 0.1;
constexpr double kOrderFloor = 1e-6;

Branch next_branch(Branch b) {
    switch (b) {
        case Branch::B1: return Branch::B2;
        case Branch::B2: return Branch::B3;
        case Branch::B3: return Branch::B4;
        case Branch::B4: return Branch::B1;
    }
    return Branch::B1;
}

double sample_v(const IVTrace& tr, const BranchSegmentation& seg, std::size_t k) {
    return tr.v[seg.offset + k];
}

double sample_i(const IVTrace& tr, const BranchSegmentation& seg, std::size_t k) {
    return tr.i[seg.offset + k];
}

/// Analyzed index of the sample that closes a polygon starting at seg.begin:
/// the sample right before the segment when there is one.
std::size_t polygon_start(const Segment& s) { return s.begin > 0 ? s.begin - 1 : s.begin; }

struct Curve {
    std::vector<double> x;
    std::vector<double> y;
};

/// Branch samples as a curve with strictly increasing |V|; repeated
/// voltages keep the first occurrence.
Curve branch_curve(const IVTrace& tr, const BranchSegmentation& seg, const Segment& s) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(s.size());
    for (std::size_t k = s.begin; k < s.end; ++k) {
        pts.emplace_back(std::abs(sample_v(tr, seg, k)), sample_i(tr, seg, k));
    }
    std::stable_sort(pts.begin(), pts.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    Curve c;
    for (const auto& [x, y] : pts) {
        if (!c.x.empty() && !(x > c.x.back())) continue;
        c.x.push_back(x);
        c.y.push_back(y);
    }
    return c;
}

double max_abs_current(const IVTrace& tr, const BranchSegmentation& seg, std::size_t begin,
                       std::size_t end) {
    double m = 0.0;
    for (std::size_t k = begin; k < end; ++k) m = std::max(m, std::abs(sample_i(tr, seg, k)));
    return m;
}

struct CycleSpan {
    const Segment* b1;
    const Segment* b2;
    const Segment* b3;
    const Segment* b4;
};

CycleSpan cycle_span(const BranchSegmentation& seg, int cycle) {
    CycleSpan c{seg.find(cycle, Branch::B1), seg.find(cycle, Branch::B2),
                seg.find(cycle, Branch::B3), seg.find(cycle, Branch::B4)};
    if (!c.b1 || !c.b2 || !c.b3 || !c.b4) {
        throw InputError("cycle " + std::to_string(cycle) + " is not complete");
    }
    return c;
}

int last_full_cycle(const BranchSegmentation& seg) {
    const auto full = seg.full_cycles();
    if (full.empty()) throw InputError("trace contains no full sweep cycle after t0");
    return full.back();
}

/// Mean of (I_second(V) - I_first(V)) over first-branch samples with
/// v_lo < |V| <= v_hi, evaluated at matching |V|.
double mean_order(const IVTrace& tr, const BranchSegmentation& seg, const Segment& first,
                  const Segment& second, double v_lo, double v_hi) {
    const Curve c2 = branch_curve(tr, seg, second);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t k = first.begin; k < first.end; ++k) {
        const double x = std::abs(sample_v(tr, seg, k));
        if (x <= v_lo || x > v_hi) continue;
        double i2 = 0.0;
        if (!interpolate(c2.x, c2.y, x, i2)) continue;
        sum += i2 - sample_i(tr, seg, k);
        ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

bool branches_cross(const IVTrace& tr, const BranchSegmentation& seg, const Segment& first,
                    const Segment& second, double v_lo, double floor) {
    const Curve c2 = branch_curve(tr, seg, second);
    bool above = false;
    bool below = false;
    for (std::size_t k = first.begin; k < first.end; ++k) {
        const double x = std::abs(sample_v(tr, seg, k));
        if (x <= v_lo) continue;
        double i2 = 0.0;
        if (!interpolate(c2.x, c2.y, x, i2)) continue;
        const double d = i2 - sample_i(tr, seg, k);
        if (d > floor) above = true;
        if (d < -floor) below = true;
    }
    return above && below;
}

/// Current of a segment extrapolated linearly to 0 V from its two samples
/// closest to the origin.
double current_at_zero(const IVTrace& tr, const BranchSegmentation& seg, const Segment& s) {
    std::size_t best = s.begin;
    for (std::size_t k = s.begin; k < s.end; ++k) {
        if (std::abs(sample_v(tr, seg, k)) < std::abs(sample_v(tr, seg, best))) best = k;
    }
    const double v0 = sample_v(tr, seg, best);
    const double i0 = sample_i(tr, seg, best);
    if (v0 == 0.0 || s.size() < 2) return i0;
    const std::size_t other = best + 1 < s.end ? best + 1 : best - 1;
    const double v1 = sample_v(tr, seg, other);
    if (v1 == v0) return i0;
    return i0 - v0 * (sample_i(tr, seg, other) - i0) / (v1 - v0);
}

PolarityLoop half_loop(const IVTrace& tr, const BranchSegmentation& seg, const Segment& rise,
                       const Segment& fall, double v_eps, double floor) {
    PolarityLoop out;
    const std::size_t b = polygon_start(rise);
    std::vector<double> x, y;
    double vmax = 0.0, imax = 0.0;
    for (std::size_t k = b; k < fall.end; ++k) {
        x.push_back(sample_v(tr, seg, k));
        y.push_back(sample_i(tr, seg, k));
        vmax = std::max(vmax, std::abs(x.back()));
        imax = std::max(imax, std::abs(y.back()));
    }
    out.area = std::abs(shoelace_area(x, y));
    out.normalized = (vmax > 0.0 && imax > 0.0) ? out.area / (vmax * imax) : 0.0;
    out.branch_crossing = branches_cross(tr, seg, rise, fall, v_eps, floor);
    return out;
}

}  // namespace

std::string branch_name(Branch b) { return "B" + std::to_string(static_cast<int>(b)); }

std::string role_name(BranchRole r) {
    switch (r) {
        case BranchRole::Read: return "Read";
        case BranchRole::Write: return "Write";
        case BranchRole::Mixed: return "Mixed";
        case BranchRole::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

std::string label_name(Label l) {
    switch (l) {
        case Label::NonMemristive: return "NonMemristive";
        case Label::LinearMemristor: return "LinearMemristor";
        case Label::NonlinearMemristor: return "NonlinearMemristor";
    }
    return "NonMemristive";
}

FluxChargeTrace integrate_flux_charge(const IVTrace& trace, double phi0, double q0) {
    trace.validate();
    const std::size_t n = trace.analyzed_size();
    if (n < 2) throw InputError("flux/charge integration needs at least 2 analyzed samples");
    const auto first = static_cast<std::ptrdiff_t>(trace.t0_index);
    FluxChargeTrace fq;
    fq.phi0 = phi0;
    fq.q0 = q0;
    fq.t.assign(trace.t.begin() + first, trace.t.end());
    fq.phi = cumulative_trapezoid(std::span(trace.v).subspan(trace.t0_index), trace.dt, phi0);
    fq.q = cumulative_trapezoid(std::span(trace.i).subspan(trace.t0_index), trace.dt, q0);
    return fq;
}

MemristanceProfile memristance(const FluxChargeTrace& fq, double dq_tol) {
    const std::size_t n = fq.size();
    MemristanceProfile p;
    p.dq_tol = dq_tol;
    p.m.assign(n, 0.0);
    p.valid.assign(n, false);
    if (n < 2) return p;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t lo = k == 0 ? 0 : k - 1;
        const std::size_t hi = k + 1 == n ? k : k + 1;
        const double dq = fq.q[hi] - fq.q[lo];
        const double dphi = fq.phi[hi] - fq.phi[lo];
        if (std::abs(dq) > dq_tol && std::isfinite(dphi / dq)) {
            p.m[k] = dphi / dq;
            p.valid[k] = true;
        }
    }
    return p;
}

double resolve_dq_tol(const FluxChargeTrace& fq, double relative) {
    double m = 0.0;
    for (std::size_t k = 1; k + 1 < fq.size(); ++k) {
        m = std::max(m, std::abs(fq.q[k + 1] - fq.q[k - 1]));
    }
    return relative * m;
}

const Segment* BranchSegmentation::find(int cycle, Branch b) const {
    for (const auto& s : segments) {
        if (s.cycle == cycle && s.branch == b) return &s;
    }
    return nullptr;
}

int BranchSegmentation::cycle_count() const { return segments.empty() ? 0 : segments.back().cycle; }

std::vector<int> BranchSegmentation::full_cycles() const {
    std::vector<int> out;
    for (int c = 1; c <= cycle_count(); ++c) {
        const Segment* b1 = find(c, Branch::B1);
        const Segment* b4 = find(c, Branch::B4);
        if (!b1 || !find(c, Branch::B2) || !find(c, Branch::B3) || !b4) continue;
        if (&segments.back() == b4 && !last_cycle_closed) continue;
        out.push_back(c);
    }
    return out;
}

BranchSegmentation segment_branches(const IVTrace& trace, double v_eps, int filter_window) {
    trace.validate();
    const std::size_t n = trace.analyzed_size();
    if (n < 2) throw SegmentationError("segmentation needs at least 2 analyzed samples");
    if (filter_window < 1) throw ConfigError("filter window must be >= 1");

    std::vector<double> v(trace.v.begin() + static_cast<std::ptrdiff_t>(trace.t0_index),
                          trace.v.end());
    if (filter_window > 1) {
        const std::size_t half = static_cast<std::size_t>(filter_window) / 2;
        std::vector<double> smooth(n);
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t lo = k >= half ? k - half : 0;
            const std::size_t hi = std::min(n - 1, k + half);
            double s = 0.0;
            for (std::size_t j = lo; j <= hi; ++j) s += v[j];
            smooth[k] = s / static_cast<double>(hi - lo + 1);
        }
        v = std::move(smooth);
    }

    // Direction of travel at each sample: arrival slope, inherited across plateaus.
    std::vector<int> dir(n, 0);
    for (std::size_t k = 1; k < n; ++k) {
        const double d = v[k] - v[k - 1];
        dir[k] = d > 0.0 ? 1 : (d < 0.0 ? -1 : dir[k - 1]);
    }
    std::size_t first_moving = 1;
    while (first_moving < n && dir[first_moving] == 0) ++first_moving;
    if (first_moving == n) throw SegmentationError("voltage never changes; not a sweep");
    for (std::size_t k = 0; k < first_moving; ++k) dir[k] = dir[first_moving];

    BranchSegmentation seg;
    seg.offset = trace.t0_index;
    seg.labels.resize(n);
    int cycle = 1;
    std::optional<Branch> prev;
    for (std::size_t k = 0; k < n; ++k) {
        Branch b;
        if (v[k] > v_eps) {
            b = dir[k] > 0 ? Branch::B1 : Branch::B2;
        } else if (v[k] < -v_eps) {
            b = dir[k] < 0 ? Branch::B3 : Branch::B4;
        } else if (dir[k] > 0) {
            b = (prev == Branch::B3 || prev == Branch::B4) ? Branch::B4 : Branch::B1;
        } else {
            b = (prev == Branch::B1 || prev == Branch::B2) ? Branch::B2 : Branch::B3;
        }
        if (prev && b != *prev) {
            if (b != next_branch(*prev)) {
                throw SegmentationError("branch order broken at analyzed sample " + std::to_string(k) +
                                        ": " + branch_name(*prev) + " followed by " + branch_name(b));
            }
            if (b == Branch::B1) ++cycle;
            seg.boundaries.push_back(k);
            seg.segments.back().end = k;
            seg.segments.push_back(Segment{cycle, b, k, k});
        } else if (!prev) {
            seg.segments.push_back(Segment{cycle, b, 0, 0});
        }
        seg.labels[k] = SampleLabel{cycle, b};
        prev = b;
    }
    seg.segments.back().end = n;
    seg.last_cycle_closed = std::abs(v.back()) <= v_eps;
    return seg;
}

IVHysteresisReport iv_hysteresis(const IVTrace& trace, const BranchSegmentation& seg,
                                 const Tolerances& tol) {
    IVHysteresisReport r;
    r.cycle = last_full_cycle(seg);
    const CycleSpan c = cycle_span(seg, r.cycle);
    const std::size_t begin = polygon_start(*c.b1);
    const double imax = max_abs_current(trace, seg, begin, c.b4->end);
    double vmax_pos = 0.0, vmax_neg = 0.0;
    for (std::size_t k = begin; k < c.b4->end; ++k) {
        vmax_pos = std::max(vmax_pos, sample_v(trace, seg, k));
        vmax_neg = std::max(vmax_neg, -sample_v(trace, seg, k));
    }
    const double vmax = std::max(vmax_pos, vmax_neg);
    const double v_eps = tol.v_eps * vmax;
    const double floor = kOrderFloor * imax;

    r.positive = half_loop(trace, seg, *c.b1, *c.b2, v_eps, floor);
    r.negative = half_loop(trace, seg, *c.b3, *c.b4, v_eps, floor);

    // Orientation of each lobe next to the origin.
    const double d_pos = mean_order(trace, seg, *c.b1, *c.b2, v_eps, kOriginWindow * vmax_pos);
    const double d_neg = mean_order(trace, seg, *c.b4, *c.b3, v_eps, kOriginWindow * vmax_neg);
    r.origin_crossing = std::abs(d_pos) > floor && std::abs(d_neg) > floor &&
                        ((d_pos > 0.0) != (d_neg > 0.0));
    r.crossing = r.origin_crossing || r.positive.branch_crossing || r.negative.branch_crossing;

    for (const Segment* s : {c.b1, c.b2, c.b3, c.b4}) {
        const double rel = imax > 0.0 ? std::abs(current_at_zero(trace, seg, *s)) / imax : 0.0;
        r.origin_current = std::max(r.origin_current, rel);
    }
    r.pinched = r.origin_current <= tol.i_origin_tol;
    return r;
}

double near_origin_overlap(const IVTrace& trace, const BranchSegmentation& seg, double window) {
    const int cycle = last_full_cycle(seg);
    const CycleSpan c = cycle_span(seg, cycle);
    const double imax = max_abs_current(trace, seg, polygon_start(*c.b1), c.b4->end);
    if (!(imax > 0.0)) return 0.0;
    double gap = 0.0;
    auto scan = [&](const Segment& first, const Segment& second) {
        const Curve c2 = branch_curve(trace, seg, second);
        for (std::size_t k = first.begin; k < first.end; ++k) {
            const double x = std::abs(sample_v(trace, seg, k));
            if (x > window) continue;
            double i2 = 0.0;
            if (!interpolate(c2.x, c2.y, x, i2)) continue;
            gap = std::max(gap, std::abs(i2 - sample_i(trace, seg, k)));
        }
    };
    scan(*c.b1, *c.b2);
    scan(*c.b4, *c.b3);
    return gap / imax;
}

std::vector<CycleArea> fq_loop_area(const FluxChargeTrace& fq, const BranchSegmentation& seg) {
    std::vector<CycleArea> out;
    for (int cycle : seg.full_cycles()) {
        const CycleSpan c = cycle_span(seg, cycle);
        const std::size_t b = polygon_start(*c.b1);
        const std::size_t e = c.b4->end;
        std::span<const double> q(fq.q.data() + b, e - b);
        std::span<const double> phi(fq.phi.data() + b, e - b);
        CycleArea a;
        a.cycle = cycle;
        a.signed_area = shoelace_area(q, phi);
        const auto [qlo, qhi] = std::minmax_element(q.begin(), q.end());
        const auto [plo, phi_hi] = std::minmax_element(phi.begin(), phi.end());
        const double qext = *qhi - *qlo;
        const double pext = *phi_hi - *plo;
        // Extents at rounding level of the coordinates carry no loop.
        auto negligible = [](double ext, double lo, double hi) {
            return !(ext > 64.0 * DBL_EPSILON * std::max(std::abs(lo), std::abs(hi))) ||
                   !(ext > std::numeric_limits<double>::min());
        };
        if (negligible(qext, *qlo, *qhi) || negligible(pext, *plo, *phi_hi)) {
            a.signed_area = 0.0;
            a.normalized = 0.0;
        } else {
            a.normalized = std::abs(a.signed_area) / (qext * pext);
        }
        out.push_back(a);
    }
    return out;
}

std::array<BranchRoleInfo, 4> branch_roles(const FluxChargeTrace& fq, const MemristanceProfile& profile,
                                           const BranchSegmentation& seg, int cycle, double r_tol) {
    std::array<BranchRoleInfo, 4> out{};
    const CycleSpan c = cycle_span(seg, cycle);
    const Segment* segs[4] = {c.b1, c.b2, c.b3, c.b4};
    for (int b = 0; b < 4; ++b) {
        BranchRoleInfo& info = out[static_cast<std::size_t>(b)];
        info.branch = segs[b]->branch;
        std::vector<double> q, phi, m;
        for (std::size_t k = segs[b]->begin; k < segs[b]->end; ++k) {
            if (!profile.valid[k]) continue;
            q.push_back(fq.q[k]);
            phi.push_back(fq.phi[k]);
            m.push_back(profile.m[k]);
        }
        info.valid_samples = q.size();
        if (q.size() < 4) {
            info.role = BranchRole::Undetermined;
            continue;
        }
        double sum = 0.0;
        for (double x : m) sum += x;
        info.mean_m = sum / static_cast<double>(m.size());
        info.residual = fit_affine(q, phi).normalized_residual;

        std::size_t up = 0, down = 0;
        for (std::size_t k = 1; k < m.size(); ++k) {
            if (m[k] > m[k - 1]) ++up;
            if (m[k] < m[k - 1]) ++down;
        }
        const std::size_t moves = up + down;
        info.monotone_fraction =
            moves ? static_cast<double>(std::max(up, down)) / static_cast<double>(moves) : 1.0;

        if (info.residual < r_tol) {
            info.role = BranchRole::Read;
        } else if (info.monotone_fraction >= kWriteMonotone) {
            info.role = BranchRole::Write;
        } else {
            info.role = BranchRole::Mixed;
        }
    }
    return out;
}

namespace {

PairMatch match_pair(const IVTrace& trace, const MemristanceProfile& profile,
                     const BranchSegmentation& seg, const Segment& first, const Segment& second,
                     double m_tol) {
    PairMatch pm;
    pm.first = first.branch;
    pm.second = second.branch;
    std::vector<double> m2;
    for (std::size_t k = second.begin; k < second.end; ++k) {
        if (profile.valid[k]) m2.push_back(profile.m[k]);
    }
    std::sort(m2.begin(), m2.end());
    for (std::size_t k = first.begin; k < first.end; ++k) {
        pm.v_extremum = std::max(pm.v_extremum, std::abs(sample_v(trace, seg, k)));
    }

    std::size_t matched = 0, in_range = 0, matched_in_range = 0, near = 0, elsewhere = 0;
    pm.min_match_v = std::numeric_limits<double>::infinity();
    for (std::size_t k = first.begin; k < first.end; ++k) {
        if (!profile.valid[k]) continue;
        ++pm.samples;
        if (m2.empty()) continue;
        const double m1 = profile.m[k];
        auto it = std::lower_bound(m2.begin(), m2.end(), m1);
        double nearest = it == m2.end() ? m2.back() : *it;
        if (it != m2.begin() && std::abs(*(it - 1) - m1) < std::abs(nearest - m1)) nearest = *(it - 1);
        const bool inside = m1 >= m2.front() && m1 <= m2.back();
        if (inside) ++in_range;
        if (!(std::abs(nearest - m1) <= m_tol * std::abs(m1))) continue;
        ++matched;
        if (inside) ++matched_in_range;
        const double av = std::abs(sample_v(trace, seg, k));
        pm.min_match_v = std::min(pm.min_match_v, av);
        if (pm.v_extremum > 0.0 && std::abs(av - pm.v_extremum) / pm.v_extremum < kMatchWindow) {
            ++near;
        } else {
            ++elsewhere;
        }
    }
    if (!std::isfinite(pm.min_match_v)) pm.min_match_v = 0.0;
    if (pm.samples) {
        const auto s = static_cast<double>(pm.samples);
        pm.matched_fraction = static_cast<double>(matched) / s;
        pm.fraction_near_extremum = static_cast<double>(near) / s;
        pm.fraction_elsewhere = static_cast<double>(elsewhere) / s;
    }
    if (in_range) {
        pm.overlap_fraction = static_cast<double>(matched_in_range) / static_cast<double>(in_range);
    }
    return pm;
}

}  // namespace

MatchingReport memristance_matching(const IVTrace& trace, const MemristanceProfile& profile,
                                    const BranchSegmentation& seg, int cycle, double m_tol) {
    const CycleSpan c = cycle_span(seg, cycle);
    MatchingReport r;
    r.positive = match_pair(trace, profile, seg, *c.b1, *c.b2, m_tol);
    r.negative = match_pair(trace, profile, seg, *c.b3, *c.b4, m_tol);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t k = c.b1->begin; k < c.b4->end; ++k) {
        if (!profile.valid[k]) continue;
        lo = std::min(lo, profile.m[k]);
        hi = std::max(hi, profile.m[k]);
    }
    r.degenerate = std::isfinite(lo) && lo > 0.0 && (hi / lo - 1.0) <= m_tol;
    return r;
}

ClassificationReport classify(const IVTrace& trace, const Tolerances& tol, double phi0, double q0) {
    trace.validate();
    ClassificationReport rep;
    rep.tolerances = tol;

    double vmax = 0.0, imax = 0.0;
    for (std::size_t k = trace.t0_index; k < trace.size(); ++k) {
        vmax = std::max(vmax, std::abs(trace.v[k]));
        imax = std::max(imax, std::abs(trace.i[k]));
    }
    rep.v_eps_abs = tol.v_eps * vmax;
    rep.i_origin_abs = tol.i_origin_tol * imax;

    const BranchSegmentation seg = segment_branches(trace, rep.v_eps_abs, tol.filter_window);
    const int cycle = last_full_cycle(seg);
    rep.analyzed_cycle = cycle;

    const FluxChargeTrace fq = integrate_flux_charge(trace, phi0, q0);
    rep.dq_tol_abs = resolve_dq_tol(fq, tol.dq_tol);
    const MemristanceProfile profile = memristance(fq, rep.dq_tol_abs);

    rep.iv = iv_hysteresis(trace, seg, tol);
    rep.iv_hysteresis_area = rep.iv.positive.area + rep.iv.negative.area;
    rep.fq_loop_area = fq_loop_area(fq, seg);
    for (const auto& a : rep.fq_loop_area) {
        if (a.cycle == cycle) rep.fq_area_normalized = a.normalized;
    }
    rep.branch_roles = branch_roles(fq, profile, seg, cycle, tol.r_tol);
    rep.matching = memristance_matching(trace, profile, seg, cycle, tol.m_tol);

    // Diode-likeness: polarity asymmetry at the sweep extrema, or a
    // superlinear rise along either write branch.
    const CycleSpan c = cycle_span(seg, cycle);
    double i_pos = 0.0, i_neg = 0.0, v_pos = 0.0, v_neg = 0.0;
    for (std::size_t k = c.b1->begin; k < c.b4->end; ++k) {
        const double v = sample_v(trace, seg, k);
        if (v > v_pos) v_pos = v, i_pos = sample_i(trace, seg, k);
        if (-v > v_neg) v_neg = -v, i_neg = sample_i(trace, seg, k);
    }
    rep.rectification = std::abs(i_neg) > 0.0 ? std::abs(i_pos) / std::abs(i_neg)
                                              : std::numeric_limits<double>::infinity();
    auto superlinear = [&](const Segment& s) {
        const Curve cv = branch_curve(trace, seg, s);
        if (cv.x.size() < 3) return 0.0;
        const double top = cv.x.back();
        double i_top = 0.0, i_half = 0.0;
        if (!interpolate(cv.x, cv.y, top, i_top) || !interpolate(cv.x, cv.y, 0.5 * top, i_half)) return 0.0;
        if (i_half == 0.0) return 0.0;
        return std::abs(i_top) / (2.0 * std::abs(i_half)) - 1.0;
    };
    rep.superlinearity = std::max(superlinear(*c.b1), superlinear(*c.b3));

    const double iv_evidence = std::max(rep.iv.positive.normalized, rep.iv.negative.normalized);
    const bool hysteresis = iv_evidence > tol.iv_tol;
    const double asym = std::isfinite(rep.rectification) ? std::abs(rep.rectification - 1.0) : 1.0;

    rep.criteria[0] = {true, static_cast<double>(fq.size()), "well-formed trace; value = analyzed samples"};
    rep.criteria[1] = {(asym > 0.1 || rep.superlinearity > 0.01) && hysteresis,
                       std::max(asym, rep.superlinearity),
                       "diode-like response with I-V hysteresis; value = max(|rectification - 1|, superlinearity)"};
    rep.criteria[2] = {hysteresis, iv_evidence, "I-V loop area; value = normalized area"};
    rep.criteria[3] = {rep.fq_area_normalized > tol.eps_hys, rep.fq_area_normalized,
                       "phi-q loop area; value = normalized area"};

    if (!rep.criteria[2].passed) {
        rep.label = Label::NonMemristive;
    } else if (!rep.criteria[3].passed) {
        rep.label = Label::LinearMemristor;
    } else {
        rep.label = Label::NonlinearMemristor;
    }
    return rep;
}

}  // namespace memristor

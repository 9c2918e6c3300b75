#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "memristor/sweep.hpp"

namespace memristor {

/// Analysis tolerances. Relative entries are scaled per trace; the resolved
/// absolute values are echoed in the report.
struct Tolerances {
    double eps_hys = 0.02;        ///< normalized phi-q loop area
    double r_tol = 1e-3;          ///< normalized affine residual for Read branches
    double m_tol = 0.05;          ///< relative memristance match
    double v_eps = 1e-3;          ///< times max|V|
    double dq_tol = 1e-3;         ///< times max|dq| of the central stencil
    double i_origin_tol = 1e-3;   ///< times max|I|
    double iv_tol = 1e-3;         ///< normalized I-V loop area
    int filter_window = 1;        ///< moving-average window before segmentation; 1 = off
};

/// Flux and charge of the analyzed samples; index 0 is t0.
struct FluxChargeTrace {
    std::vector<double> t;
    std::vector<double> phi;
    std::vector<double> q;
    double phi0 = 0.0;
    double q0 = 0.0;

    [[nodiscard]] std::size_t size() const { return phi.size(); }
};

FluxChargeTrace integrate_flux_charge(const IVTrace& trace, double phi0 = 0.0, double q0 = 0.0);

struct MemristanceProfile {
    std::vector<double> m;
    std::vector<bool> valid;
    double dq_tol = 0.0;
};

/// Central differences inside, one-sided at the two ends. dq_tol is absolute.
MemristanceProfile memristance(const FluxChargeTrace& fq, double dq_tol);

/// dq_tol scaled by the largest central-stencil charge increment.
double resolve_dq_tol(const FluxChargeTrace& fq, double relative);

enum class Branch { B1 = 1, B2 = 2, B3 = 3, B4 = 4 };

std::string branch_name(Branch b);

struct SampleLabel {
    int cycle = 1;
    Branch branch = Branch::B1;
};

/// Contiguous run of one branch; [begin, end) in analyzed indices.
struct Segment {
    int cycle = 1;
    Branch branch = Branch::B1;
    std::size_t begin = 0;
    std::size_t end = 0;

    [[nodiscard]] std::size_t size() const { return end - begin; }
};

struct BranchSegmentation {
    /// One label per analyzed sample.
    std::vector<SampleLabel> labels;
    /// Analyzed indices where a new segment starts (zero crossings and extrema).
    std::vector<std::size_t> boundaries;
    std::vector<Segment> segments;
    /// Absolute trace index of analyzed sample 0.
    std::size_t offset = 0;
    /// Whether the final analyzed sample lies within v_eps of 0 V.
    bool last_cycle_closed = false;

    [[nodiscard]] const Segment* find(int cycle, Branch b) const;
    /// Cycles containing all four branches, the last one closing near 0 V.
    [[nodiscard]] std::vector<int> full_cycles() const;
    [[nodiscard]] int cycle_count() const;
};

/// v_eps is absolute. filter_window > 1 smooths V before labelling only.
BranchSegmentation segment_branches(const IVTrace& trace, double v_eps, int filter_window = 1);

struct PolarityLoop {
    double area = 0.0;             ///< |shoelace| of the half-cycle (V, I) polygon
    double normalized = 0.0;       ///< area / (max|V| * max|I|) of the half cycle
    bool branch_crossing = false;  ///< rising and falling currents change order
};

struct IVHysteresisReport {
    int cycle = 0;
    PolarityLoop positive;
    PolarityLoop negative;
    /// Sign of (I_B2 - I_B1) just above 0 V differs from sign of (I_B3 - I_B4) just below.
    bool origin_crossing = false;
    bool crossing = false;
    bool pinched = false;
    /// Largest |I| extrapolated to 0 V over the four segments, over max|I|.
    double origin_current = 0.0;
};

IVHysteresisReport iv_hysteresis(const IVTrace& trace, const BranchSegmentation& seg,
                                 const Tolerances& tol = {});

/// Largest gap between the currents of a read/write branch pair for |V| <= window,
/// relative to max|I| of the analyzed cycle.
double near_origin_overlap(const IVTrace& trace, const BranchSegmentation& seg, double window);

struct CycleArea {
    int cycle = 0;
    double signed_area = 0.0;
    double normalized = 0.0;
};

std::vector<CycleArea> fq_loop_area(const FluxChargeTrace& fq, const BranchSegmentation& seg);

enum class BranchRole { Read, Write, Mixed, Undetermined };

std::string role_name(BranchRole r);

struct BranchRoleInfo {
    Branch branch = Branch::B1;
    BranchRole role = BranchRole::Undetermined;
    std::size_t valid_samples = 0;
    double residual = 0.0;          ///< normalized affine residual of phi vs q
    double monotone_fraction = 0.0; ///< share of consecutive M steps with the dominant sign
    double mean_m = 0.0;
};

std::array<BranchRoleInfo, 4> branch_roles(const FluxChargeTrace& fq, const MemristanceProfile& profile,
                                           const BranchSegmentation& seg, int cycle,
                                           double r_tol = 1e-3);

struct PairMatch {
    Branch first = Branch::B1;
    Branch second = Branch::B2;
    std::size_t samples = 0;            ///< valid samples on the first branch
    double matched_fraction = 0.0;      ///< matched / samples
    /// matched / samples inside the second branch's M range; empty when no
    /// first-branch sample falls inside that range.
    std::optional<double> overlap_fraction;
    double v_extremum = 0.0;            ///< max|V| of the first branch
    double fraction_near_extremum = 0.0;///< matched with ||V|-Vext|/Vext < 0.05, over samples
    double fraction_elsewhere = 0.0;    ///< matched outside that window, over samples
    double min_match_v = 0.0;           ///< smallest |V| at which a match occurs
};

struct MatchingReport {
    PairMatch positive;
    PairMatch negative;
    /// M is constant on the compared branches, so every sample matches trivially.
    bool degenerate = false;
};

MatchingReport memristance_matching(const IVTrace& trace, const MemristanceProfile& profile,
                                    const BranchSegmentation& seg, int cycle, double m_tol = 0.05);

enum class Label { NonMemristive, LinearMemristor, NonlinearMemristor };

std::string label_name(Label l);

struct Criterion {
    bool passed = false;
    double evidence = 0.0;
    std::string detail;
};

struct ClassificationReport {
    std::array<Criterion, 4> criteria;
    int analyzed_cycle = 0;
    double iv_hysteresis_area = 0.0;
    IVHysteresisReport iv;
    std::vector<CycleArea> fq_loop_area;
    double fq_area_normalized = 0.0;
    double rectification = 1.0;
    double superlinearity = 0.0;
    Label label = Label::NonMemristive;
    std::array<BranchRoleInfo, 4> branch_roles{};
    MatchingReport matching;
    Tolerances tolerances;
    double v_eps_abs = 0.0;
    double dq_tol_abs = 0.0;
    double i_origin_abs = 0.0;
};

ClassificationReport classify(const IVTrace& trace, const Tolerances& tol = {},
                              double phi0 = 0.0, double q0 = 0.0);

}  // namespace memristor

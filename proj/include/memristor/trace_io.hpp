#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "memristor/fluxq.hpp"
#include "memristor/sweep.hpp"

namespace memristor {

inline constexpr std::size_t kMinTraceSamples = 8;

/// Reads a `t,v,i` CSV trace. Spacing that is uniform to within 1 % is
/// resampled onto a uniform grid and a warning is appended to `warnings`.
IVTrace read_trace(std::istream& in, std::vector<std::string>* warnings = nullptr);
IVTrace import_trace(const std::string& path, std::vector<std::string>* warnings = nullptr);

void write_trace(std::ostream& out, const IVTrace& trace);
void export_trace(const IVTrace& trace, const std::string& path);

void write_fq(std::ostream& out, const FluxChargeTrace& fq);
void export_fq(const FluxChargeTrace& fq, const std::string& path);

/// Writes `<prefix>_iv.csv` (cycle,branch,role,v,i) and `<prefix>_fq.csv`
/// (cycle,branch,role,q,phi). At most `max_points_per_cycle` rows are kept
/// per cycle; samples are dropped evenly.
void export_plot_data(const IVTrace& trace, const FluxChargeTrace& fq, const BranchSegmentation& seg,
                      const std::array<BranchRoleInfo, 4>& roles, const std::string& prefix,
                      std::size_t max_points_per_cycle = 4000);

/// Writes text to a file, throwing IoError when the path is not writable.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace memristor

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "memristor/bench.hpp"
#include "memristor/config.hpp"
#include "memristor/fluxq.hpp"
#include "memristor/gates.hpp"

namespace memristor {

inline constexpr const char* kToolName = "memristor";
inline constexpr const char* kToolVersion = "1.0.0";

nlohmann::ordered_json to_json(const ClassificationReport& r);
nlohmann::ordered_json to_json(const BenchReport& b);
nlohmann::ordered_json to_json(const GateRecipe& recipe, const GateVerification& v);

/// Per-branch summary of the analyzed cycle: sample count, voltage range,
/// role and mean memristance.
nlohmann::ordered_json branch_summaries(const IVTrace& trace, const BranchSegmentation& seg,
                                        const ClassificationReport& r);

/// Sections are emitted in a fixed order; absent parts are left out.
struct ReportDocument {
    std::optional<nlohmann::ordered_json> config;
    std::optional<nlohmann::ordered_json> classification;
    std::optional<nlohmann::ordered_json> branches;
    std::optional<nlohmann::ordered_json> bench;
    std::optional<nlohmann::ordered_json> gates;
    std::vector<std::string> warnings;

    [[nodiscard]] nlohmann::ordered_json to_json() const;
    /// Indented JSON text with a trailing newline.
    [[nodiscard]] std::string dump() const;
};

void export_report(const ReportDocument& doc, const std::string& path);

}  // namespace memristor

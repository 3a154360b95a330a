#pragma once

// End-to-end model analysis: discriminant structure, Kodaira table,
// decomposition summands, spectrum, and (optionally) the cohomology of a
// supplied monodromy representation.  Produces both a human table and a
// stable machine-readable JSON document.

#include "elfic/decomp.hpp"
#include "elfic/localsys.hpp"
#include "elfic/weierstrass.hpp"

#include <optional>
#include <string>
#include <vector>

namespace elfic {

struct CheckResult {
    std::string name;
    bool ok;
    std::string detail;
};

struct ComponentReport {
    std::string name;
    bool residual;
    int multiplicity;
    ComponentOrders orders;
    std::string kodaira_declared;
    std::string kodaira_computed;
    int n_components;
    int split_count;
    bool flagged;  // II/III/IV components are accepted but flagged
    std::optional<MatterPointCount> matter;
};

struct CohomologyReport {
    PushforwardCohomology pushforward;
    int h1_open_dim;
    SupportSplit split;
};

struct AnalysisReport {
    std::string base;
    int deg_f, deg_g, deg_delta;
    int mw_rank = 0;
    std::optional<std::pair<int, int>> hodge_X;
    std::optional<int> h2_X;
    int residual_degree;
    std::optional<GenericityCheck> genericity;  // P^1 models
    std::vector<ComponentReport> components;
    SummandList summands;
    std::optional<SpectrumReport> spectrum;  // threefold models
    std::optional<int> surface_gauge_rank;   // surface models
    std::optional<int> surface_scalars;
    std::optional<CohomologyReport> cohomology;  // with a monodromy file
    std::vector<CheckResult> checks;

    bool all_ok() const;
};

// Build the decomposition-theorem model out of a validated Weierstrass
// model, adding the implicit I1 residual component when none is declared.
FibrationModel fibration_model(const WeierstrassModel& m);

AnalysisReport analyze_model(const WeierstrassModel& m,
                             const std::optional<MonodromyRep>& rep = std::nullopt);

std::string report_to_json(const AnalysisReport& r);
std::string report_to_text(const AnalysisReport& r);

}  // namespace elfic

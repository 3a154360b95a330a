#pragma once

// Decomposition-Theorem bookkeeping for elliptic fibrations: summand lists,
// gauge rank and scalar counts from Hodge-number inputs, the
// Shioda-Tate-Wazir cross-check, and 6D spectrum / anomaly accounting.

#include "elfic/kodaira.hpp"

#include <optional>
#include <string>
#include <vector>

namespace elfic {

struct FibComponent {
    std::string name;
    KodairaType type = KodairaType::make_In(1);
    int n_k = 1;       // irreducible components of the fiber over the component
    int h1_curve = 0;  // h^1 of the component curve carrying the local system
};

struct FibrationModel {
    enum TotalSpace { Surface, Threefold } total;  // K3 over P^1 vs CY3
    int h11_base = 1;
    bool regular_base = true;  // b1 = b3 = 0
    std::vector<FibComponent> components;
    int mw_rank = 0;
    // Threefold: Hodge numbers of the crepant resolution.
    std::optional<std::pair<int, int>> hodge_X;
    // Surface: h^2 and h^3 of the total space (22 and 0 for a K3).
    std::optional<int> h2_X;
    int h3_X = 0;
};

struct Summand {
    enum Support { Base, Component, Point } support;
    std::string label;  // e.g. "R_B", "IC(V)", "IC(L_l)", "T_l"
    int shift;          // [-shift] in the decomposition
};

using SummandList = std::vector<Summand>;

struct SpectrumReport {
    int gauge_rank_bulk = 0;  // dim H^1(B, IC(V))
    int scalars_real = 0;     // dim H^2(B, IC(V))
    int scalars_complex = 0;
    int tensors = 0;
    int vectors = 0;
    int h_charged = 0;
    int h_uncharged = 0;
    bool anomaly_ok = false;
    bool stw_ok = false;
    bool scalars_match_hunch = false;  // scalars_real == 2 * H_unch
};

// R_B, IC(V)[-1], R_B[-2], plus IC(L_i)[-2] per component with n_k >= 2
// (threefold) or a point-supported T skyscraper (surface).  Throws on a
// component with n_k >= 2 of type I0/I1.
SummandList decomposition_summands(const FibrationModel& m);

// Threefold: h11(X~) - h11(B) - 1 - sum(n_k - 1), cross-checked against
// mw_rank (Shioda-Tate-Wazir).  Surface: h2(S) - 2 - sum(n_k - 1).
int gauge_rank(const FibrationModel& m);
bool stw_consistent(const FibrationModel& m);

// Real scalar count: threefold 2(h21(X~)+1) - sum_i h1(curve_i);
// surface h3(S).  Requires a regular base.
int scalar_count(const FibrationModel& m);

// dim H^0(Delta_i, IC(L_i)) = n_i - 1.
int ic_L_sections(int n_i);

// 6D spectrum; threefold models only.
SpectrumReport spectrum(const FibrationModel& m, const std::vector<std::pair<int, int>>& charged,
                        int vectors);

// Recompute h2(X~) and h3(X~) from the summand bookkeeping and compare with
// the model inputs.
struct HodgeRecomputation {
    int h2_from_summands;
    int h3_from_summands;
    bool consistent;
};
HodgeRecomputation recompute_hodge(const FibrationModel& m);

}  // namespace elfic

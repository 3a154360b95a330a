#include "elfic/decomp.hpp"

namespace elfic {

SummandList decomposition_summands(const FibrationModel& m) {
    SummandList out;
    out.push_back({Summand::Base, "R_B", 0});
    out.push_back({Summand::Base, "IC(V)", 1});
    for (const auto& c : m.components) {
        if (c.n_k < 2) continue;
        if (c.type == KodairaType::make_In(0) || c.type == KodairaType::make_In(1))
            throw CheckError("component '" + c.name + "' of type " + c.type.str() +
                             " cannot have n_k >= 2");
        if (m.total == FibrationModel::Threefold) {
            // Goresky-MacPherson: fiber dimension 1 forbids point supports,
            // so the extra summands live on the component curves.
            out.push_back({Summand::Component, "IC(L_" + c.name + ")", 2});
        } else {
            // Surface case: skyscrapers on the critical values (codim 1).
            out.push_back({Summand::Point, "T_" + c.name, 2});
        }
    }
    out.push_back({Summand::Base, "R_B", 2});
    return out;
}

static int sum_extra_components(const FibrationModel& m) {
    int s = 0;
    for (const auto& c : m.components) s += c.n_k - 1;
    return s;
}

int gauge_rank(const FibrationModel& m) {
    if (m.total == FibrationModel::Threefold) {
        if (!m.hodge_X) throw InputError("gauge_rank: threefold model needs Hodge numbers");
        int rank = m.hodge_X->first - m.h11_base - 1 - sum_extra_components(m);
        if (rank < 0)
            throw CheckError("gauge_rank negative: inconsistent Hodge/component inputs");
        return rank;
    }
    if (!m.h2_X) throw InputError("gauge_rank: surface model needs h2 of the total space");
    int rank = *m.h2_X - 2 - sum_extra_components(m);
    if (rank < 0) throw CheckError("gauge_rank negative: inconsistent surface inputs");
    return rank;
}

bool stw_consistent(const FibrationModel& m) {
    // rank MW(X) = dim H^1(B, IC(V)); the surface bookkeeping has no such
    // cross-check (h^{2,0} != 0), so it holds vacuously there.
    if (m.total != FibrationModel::Threefold) return true;
    return gauge_rank(m) == m.mw_rank;
}

int scalar_count(const FibrationModel& m) {
    if (!m.regular_base)
        throw InputError("scalar_count requires a regular base (b1 = b3 = 0)");
    if (m.total == FibrationModel::Threefold) {
        if (!m.hodge_X) throw InputError("scalar_count: threefold model needs Hodge numbers");
        int scalars = 2 * (m.hodge_X->second + 1);
        for (const auto& c : m.components)
            if (c.n_k >= 2) scalars -= c.h1_curve;
        if (scalars < 0) throw CheckError("scalar_count negative");
        return scalars;
    }
    return m.h3_X;
}

int ic_L_sections(int n_i) {
    if (n_i < 1) throw InputError("ic_L_sections: n_i must be >= 1");
    return n_i - 1;
}

SpectrumReport spectrum(const FibrationModel& m, const std::vector<std::pair<int, int>>& charged,
                        int vectors) {
    if (m.total != FibrationModel::Threefold)
        throw InputError("spectrum applies to 6D (threefold) models only");
    if (!m.hodge_X) throw InputError("spectrum: model needs Hodge numbers");

    SpectrumReport r;
    r.tensors = m.h11_base - 1;
    r.vectors = vectors;
    r.h_uncharged = 1 + m.hodge_X->second;
    r.h_charged = 0;
    for (const auto& [dim, mult] : charged) r.h_charged += dim * mult;
    int H = r.h_uncharged + r.h_charged;
    r.anomaly_ok = (H - vectors == 273 - 29 * r.tensors);

    r.gauge_rank_bulk = gauge_rank(m);
    r.scalars_real = scalar_count(m);
    r.scalars_complex = r.scalars_real / 2;
    r.stw_ok = stw_consistent(m);
    r.scalars_match_hunch = (r.scalars_real == 2 * r.h_uncharged);
    return r;
}

HodgeRecomputation recompute_hodge(const FibrationModel& m) {
    if (m.total != FibrationModel::Threefold)
        throw InputError("recompute_hodge applies to threefold models");
    if (!m.hodge_X) throw InputError("recompute_hodge: model needs Hodge numbers");
    HodgeRecomputation out;
    // H^2(X~) = H^2(B) + H^1(B, IC(V)) + sum_i H^0(Delta_i, IC(L_i)) + H^0(B),
    // with H^1(B, IC(V)) entering through the independent MW-rank route so the
    // comparison against h^{1,1}(X~) is not circular.
    out.h2_from_summands = m.h11_base + m.mw_rank + sum_extra_components(m) + 1;
    // H^3(X~) = H^3(B) + H^2(B, IC(V)) + sum_i H^1(Delta_i, IC(L_i)) + H^1(B)
    int h3 = scalar_count(m);
    for (const auto& c : m.components)
        if (c.n_k >= 2) h3 += c.h1_curve;
    out.h3_from_summands = h3;
    out.consistent = out.h2_from_summands == m.hodge_X->first &&
                     out.h3_from_summands == 2 * (m.hodge_X->second + 1);
    return out;
}

}  // namespace elfic

#include "elfic/analyze.hpp"

#include <json.hpp>

#include <functional>
#include <sstream>

namespace elfic {

using ordered_json = nlohmann::ordered_json;

bool AnalysisReport::all_ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

FibrationModel fibration_model(const WeierstrassModel& m) {
    FibrationModel fm;
    fm.total = m.base.kind == BaseSpace::P1 ? FibrationModel::Surface
                                            : FibrationModel::Threefold;
    fm.h11_base = m.base.h11();
    fm.regular_base = m.base.regular();
    fm.mw_rank = m.mw_rank;
    fm.hodge_X = m.hodge_X;
    fm.h2_X = m.h2_X;
    fm.h3_X = m.h3_X;

    bool has_residual = false;
    for (const auto& c : m.components) {
        fm.components.push_back({c.name, c.kodaira, c.n_components, c.h1_curve});
        if (c.residual) has_residual = true;
    }
    if (!has_residual)
        fm.components.push_back({"residual", KodairaType::make_In(1), 1, 0});
    return fm;
}

namespace {

void run_check(std::vector<CheckResult>& checks, const std::string& name,
               const std::function<bool(std::string&)>& fn) {
    CheckResult r{name, false, ""};
    try {
        r.ok = fn(r.detail);
    } catch (const Error& e) {
        r.ok = false;
        r.detail = e.what();
    }
    checks.push_back(std::move(r));
}

}  // namespace

AnalysisReport analyze_model(const WeierstrassModel& m,
                             const std::optional<MonodromyRep>& rep) {
    AnalysisReport out;
    out.base = m.base.kind == BaseSpace::P1 ? "P1" : "P2";
    out.deg_f = m.f.total_degree();
    out.deg_g = m.g.total_degree();
    out.mw_rank = m.mw_rank;
    out.hodge_X = m.hodge_X;
    out.h2_X = m.h2_X;

    Polynomial delta = discriminant(m);
    out.deg_delta = delta.total_degree();
    run_check(out.checks, "delta_degree", [&](std::string& detail) {
        detail = "deg Delta = " + std::to_string(out.deg_delta);
        return out.deg_delta == 3 * out.deg_f && out.deg_delta == 2 * out.deg_g;
    });

    if (m.base.kind == BaseSpace::P1) {
        out.genericity = genericity_check(m);
        run_check(out.checks, "genericity", [&](std::string& detail) {
            detail = "degree drop at infinity = " + std::to_string(out.genericity->degree_drop);
            return out.genericity->ok;
        });
    }

    for (const auto& c : m.components) {
        ComponentReport cr;
        cr.name = c.name;
        cr.residual = c.residual;
        cr.multiplicity = c.residual ? 1 : c.multiplicity;
        cr.kodaira_declared = c.kodaira.str();
        cr.kodaira_computed = "";
        cr.n_components = c.n_components;
        cr.split_count = fiber_component_count(c.kodaira);
        cr.flagged = c.kodaira.kind == KodairaType::II || c.kodaira.kind == KodairaType::III ||
                     c.kodaira.kind == KodairaType::IV;
        cr.orders = {0, 0, c.residual ? 1 : 0};

        if (!c.residual) {
            run_check(out.checks, c.name + ".orders", [&](std::string& detail) {
                cr.orders = component_orders(m, c.name);
                detail = "(" + std::to_string(cr.orders.ord_f) + "," +
                         std::to_string(cr.orders.ord_g) + "," +
                         std::to_string(cr.orders.ord_delta) + ")";
                return true;
            });
            run_check(out.checks, c.name + ".multiplicity", [&](std::string& detail) {
                detail = "declared " + std::to_string(c.multiplicity) + ", Delta order " +
                         std::to_string(cr.orders.ord_delta);
                return cr.orders.ord_delta == c.multiplicity;
            });
            run_check(out.checks, c.name + ".kodaira", [&](std::string& detail) {
                KodairaType t = classify(cr.orders.ord_f, cr.orders.ord_g, cr.orders.ord_delta);
                cr.kodaira_computed = t.str();
                detail = "declared " + cr.kodaira_declared + ", computed " + cr.kodaira_computed;
                return t == c.kodaira;
            });
            if (m.base.kind == BaseSpace::P2 && c.poly && c.poly->total_degree() == 1) {
                try {
                    cr.matter = matter_point_count(m, c.name);
                } catch (const Error& e) {
                    run_check(out.checks, c.name + ".matter", [&](std::string& detail) {
                        detail = e.what();
                        return false;
                    });
                }
            }
        }
        out.components.push_back(std::move(cr));
    }

    out.residual_degree = -1;
    run_check(out.checks, "residual_exact", [&](std::string& detail) {
        Polynomial residual = residual_discriminant(m);
        out.residual_degree = residual.total_degree();
        Polynomial back = residual;
        for (const auto& c : m.components)
            if (!c.residual && c.poly) back = back * c.poly->pow(c.multiplicity);
        detail = "residual degree " + std::to_string(out.residual_degree);
        return back == delta;
    });

    FibrationModel fm = fibration_model(m);
    run_check(out.checks, "summands", [&](std::string& detail) {
        out.summands = decomposition_summands(fm);
        detail = std::to_string(out.summands.size()) + " summands";
        return true;
    });

    if (fm.total == FibrationModel::Threefold) {
        if (m.hodge_X) {
            run_check(out.checks, "stw", [&](std::string& detail) {
                int rank = gauge_rank(fm);
                detail = "gauge rank " + std::to_string(rank) + ", MW rank " +
                         std::to_string(m.mw_rank);
                return stw_consistent(fm);
            });
            run_check(out.checks, "spectrum", [&](std::string& detail) {
                std::vector<std::pair<int, int>> charged;
                for (const auto& ch : m.charged_hypers) charged.emplace_back(ch.dim, ch.mult);
                out.spectrum = spectrum(fm, charged, m.vectors);
                detail = "H - V = " +
                         std::to_string(out.spectrum->h_uncharged + out.spectrum->h_charged -
                                        out.spectrum->vectors) +
                         ", 273 - 29T = " + std::to_string(273 - 29 * out.spectrum->tensors);
                return out.spectrum->anomaly_ok;
            });
            run_check(out.checks, "scalars_even", [&](std::string& detail) {
                int s = scalar_count(fm);
                detail = std::to_string(s) + " real scalars";
                return s % 2 == 0;
            });
            run_check(out.checks, "hodge_consistency", [&](std::string& detail) {
                HodgeRecomputation h = recompute_hodge(fm);
                detail = "h2 " + std::to_string(h.h2_from_summands) + ", h3 " +
                         std::to_string(h.h3_from_summands);
                return h.consistent;
            });
        }
    } else if (m.h2_X) {
        run_check(out.checks, "surface_rank", [&](std::string& detail) {
            out.surface_gauge_rank = gauge_rank(fm);
            detail = "gauge rank " + std::to_string(*out.surface_gauge_rank);
            return true;
        });
        run_check(out.checks, "surface_scalars", [&](std::string& detail) {
            out.surface_scalars = scalar_count(fm);
            detail = std::to_string(*out.surface_scalars) + " scalars";
            return true;
        });
    }

    if (rep) {
        run_check(out.checks, "cohomology", [&](std::string& detail) {
            CohomologyReport cr;
            cr.pushforward = pushforward_cohomology(*rep);
            cr.h1_open_dim = h1_open(*rep);
            cr.split = bulk_brane_split(*rep);
            out.cohomology = cr;
            detail = "pushforward (" + std::to_string(cr.pushforward.h0) + "," +
                     std::to_string(cr.pushforward.h1) + "," + std::to_string(cr.pushforward.h2) +
                     ")";
            return true;
        });
        if (out.cohomology && out.surface_gauge_rank) {
            run_check(out.checks, "bulk_equals_decomp_rank", [&](std::string& detail) {
                detail = "bulk " + std::to_string(out.cohomology->split.bulk_dim) +
                         ", decomposition " + std::to_string(*out.surface_gauge_rank);
                return out.cohomology->split.bulk_dim == *out.surface_gauge_rank;
            });
        }
    }
    return out;
}

namespace {

ordered_json summand_json(const Summand& s) {
    ordered_json j;
    switch (s.support) {
        case Summand::Base: j["support"] = "base"; break;
        case Summand::Component: j["support"] = "component"; break;
        case Summand::Point: j["support"] = "point"; break;
    }
    j["label"] = s.label;
    j["shift"] = s.shift;
    return j;
}

}  // namespace

std::string report_to_json(const AnalysisReport& r) {
    ordered_json j;
    j["base"] = r.base;
    j["degrees"] = {{"f", r.deg_f}, {"g", r.deg_g}, {"delta", r.deg_delta}};
    j["mw_rank"] = r.mw_rank;
    if (r.hodge_X) j["hodge"] = {{"h11_X", r.hodge_X->first}, {"h21_X", r.hodge_X->second}};
    if (r.h2_X) j["hodge"] = {{"h2_X", *r.h2_X}};
    j["residual_degree"] = r.residual_degree;
    if (r.genericity) {
        j["genericity"] = {{"affine_square_free", r.genericity->affine_square_free},
                           {"degree_drop", r.genericity->degree_drop},
                           {"ok", r.genericity->ok}};
    }
    j["components"] = ordered_json::array();
    for (const auto& c : r.components) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["residual"] = c.residual;
        cj["multiplicity"] = c.multiplicity;
        if (!c.residual)
            cj["orders"] = {c.orders.ord_f, c.orders.ord_g, c.orders.ord_delta};
        cj["kodaira_declared"] = c.kodaira_declared;
        if (!c.kodaira_computed.empty()) cj["kodaira_computed"] = c.kodaira_computed;
        cj["n_components"] = c.n_components;
        cj["split_count"] = c.split_count;
        if (c.flagged) cj["flagged"] = true;
        if (c.matter) {
            ordered_json mj;
            mj["total_degree"] = c.matter->total_degree;
            mj["subloci"] = ordered_json::array();
            for (const auto& s : c.matter->subloci)
                mj["subloci"].push_back({{"name", s.name},
                                         {"points", s.points},
                                         {"multiplicity", s.multiplicity},
                                         {"square_free", s.square_free}});
            mj["z_points"] = c.matter->z_points;
            mj["z_square_free"] = c.matter->z_square_free;
            cj["matter"] = mj;
        }
        j["components"].push_back(cj);
    }
    j["summands"] = ordered_json::array();
    for (const auto& s : r.summands) j["summands"].push_back(summand_json(s));
    if (r.spectrum) {
        const auto& s = *r.spectrum;
        j["spectrum"] = {{"gauge_rank_bulk", s.gauge_rank_bulk},
                         {"scalars_real", s.scalars_real},
                         {"scalars_complex", s.scalars_complex},
                         {"tensors", s.tensors},
                         {"vectors", s.vectors},
                         {"H_charged", s.h_charged},
                         {"H_uncharged", s.h_uncharged},
                         {"anomaly_ok", s.anomaly_ok},
                         {"stw_ok", s.stw_ok}};
    }
    if (r.surface_gauge_rank) {
        j["surface"] = {{"gauge_rank_bulk", *r.surface_gauge_rank},
                        {"scalars_real", r.surface_scalars.value_or(0)}};
    }
    if (r.cohomology) {
        const auto& c = *r.cohomology;
        j["cohomology"] = {
            {"pushforward", {c.pushforward.h0, c.pushforward.h1, c.pushforward.h2}},
            {"h1_open", c.h1_open_dim},
            {"split",
             {{"bulk", c.split.bulk_dim},
              {"branes", c.split.brane_dims},
              {"total", c.split.total_dim},
              {"exact", c.split.exact}}}};
    }
    j["checks"] = ordered_json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    j["ok"] = r.all_ok();
    return j.dump(2) + "\n";
}

std::string report_to_text(const AnalysisReport& r) {
    std::ostringstream o;
    o << "base " << r.base << "; deg f = " << r.deg_f << ", deg g = " << r.deg_g
      << ", deg Delta = " << r.deg_delta << "\n";
    o << "residual discriminant degree " << r.residual_degree << "\n";
    if (r.genericity)
        o << "genericity: " << (r.genericity->ok ? "ok" : "FAILED")
          << " (degree drop " << r.genericity->degree_drop << ")\n";
    if (!r.components.empty()) {
        o << "components:\n";
        for (const auto& c : r.components) {
            o << "  " << c.name;
            if (c.residual) {
                o << " [residual]";
            } else {
                o << " orders (" << c.orders.ord_f << "," << c.orders.ord_g << ","
                  << c.orders.ord_delta << ")";
            }
            o << " type " << c.kodaira_declared << " n=" << c.n_components;
            if (c.flagged) o << " [flagged: additive type]";
            o << "\n";
            if (c.matter) {
                o << "    matter on line: degree " << c.matter->total_degree;
                for (const auto& s : c.matter->subloci)
                    o << "; " << s.name << ": " << s.points << " points x" << s.multiplicity;
                o << "; Z points: " << c.matter->z_points
                  << (c.matter->z_square_free ? " (distinct)" : " (NOT square-free)") << "\n";
            }
        }
    }
    o << "summands:";
    for (const auto& s : r.summands) {
        o << " " << s.label;
        if (s.shift) o << "[-" << s.shift << "]";
    }
    o << "\n";
    if (r.spectrum) {
        const auto& s = *r.spectrum;
        o << "spectrum: gauge rank " << s.gauge_rank_bulk << ", scalars " << s.scalars_real
          << " real / " << s.scalars_complex << " complex, T = " << s.tensors
          << ", V = " << s.vectors << ", H = " << (s.h_charged + s.h_uncharged) << " ("
          << s.h_uncharged << " uncharged)\n";
        o << "anomaly H - V = 273 - 29T: " << (s.anomaly_ok ? "ok" : "FAILED")
          << "; Shioda-Tate-Wazir: " << (s.stw_ok ? "ok" : "FAILED") << "\n";
    }
    if (r.surface_gauge_rank)
        o << "surface: gauge rank " << *r.surface_gauge_rank << ", scalars "
          << r.surface_scalars.value_or(0) << "\n";
    if (r.cohomology) {
        const auto& c = *r.cohomology;
        o << "pushforward (" << c.pushforward.h0 << "," << c.pushforward.h1 << ","
          << c.pushforward.h2 << "); open " << c.h1_open_dim << "; split " << c.split.bulk_dim
          << " + [";
        for (std::size_t i = 0; i < c.split.brane_dims.size(); ++i) {
            if (i) o << ",";
            o << c.split.brane_dims[i];
        }
        o << "]" << (c.split.exact ? "" : " (report only)") << "\n";
    }
    o << "checks:\n";
    for (const auto& c : r.checks)
        o << "  [" << (c.ok ? "ok" : "FAIL") << "] " << c.name
          << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    o << (r.all_ok() ? "ALL CHECKS PASSED" : "CHECKS FAILED") << "\n";
    return o.str();
}

}  // namespace elfic

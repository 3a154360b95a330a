#include "elfic/weierstrass.hpp"

#include <json.hpp>

#include <algorithm>

namespace elfic {

using nlohmann::json;

WeierstrassModel load_model(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("model file: ") + e.what());
    }

    WeierstrassModel m;
    try {
        std::string base = doc.at("base").get<std::string>();
        if (base == "P1") {
            m.base.kind = BaseSpace::P1;
        } else if (base == "P2") {
            m.base.kind = BaseSpace::P2;
        } else {
            throw InputError("model file: unknown base kind '" + base + "'");
        }
        m.base.coords = doc.at("variables").get<std::vector<std::string>>();
        std::size_t want = m.base.kind == BaseSpace::P1 ? 2 : 3;
        if (m.base.coords.size() != want)
            throw InputError("model file: base " + base + " needs " + std::to_string(want) +
                             " variables");

        m.f = Polynomial::parse(doc.at("f").get<std::string>(), m.base.coords);
        m.g = Polynomial::parse(doc.at("g").get<std::string>(), m.base.coords);
        if (!m.f.is_homogeneous() || !m.g.is_homogeneous())
            throw InputError("model file: f and g must be homogeneous");
        if (m.f.total_degree() != m.base.expected_deg_f())
            throw InputError("model file: deg f = " + std::to_string(m.f.total_degree()) +
                             ", expected " + std::to_string(m.base.expected_deg_f()));
        if (m.g.total_degree() != m.base.expected_deg_g())
            throw InputError("model file: deg g = " + std::to_string(m.g.total_degree()) +
                             ", expected " + std::to_string(m.base.expected_deg_g()));

        for (const auto& c : doc.value("components", json::array())) {
            ComponentDecl d;
            d.name = c.at("name").get<std::string>();
            d.residual = c.value("residual", false);
            if (!d.residual) {
                d.poly = Polynomial::parse(c.at("poly").get<std::string>(), m.base.coords);
                if (d.poly->is_zero() || d.poly->is_constant() || !d.poly->is_homogeneous())
                    throw InputError("model file: component '" + d.name +
                                     "' must be homogeneous and non-constant");
                d.multiplicity = c.at("multiplicity").get<int>();
                if (d.multiplicity < 1)
                    throw InputError("model file: component multiplicity must be >= 1");
            }
            d.kodaira = KodairaType::parse(c.at("kodaira").get<std::string>());
            bool split = !c.contains("n_components");
            d.n_components = fiber_component_count(d.kodaira, split,
                                                   c.value("n_components", 1));
            d.h1_curve = c.value("h1_curve", 0);
            for (const auto& s : c.value("matter_subloci", json::array())) {
                SubLocus sub;
                sub.name = s.at("name").get<std::string>();
                sub.poly = Polynomial::parse(s.at("poly").get<std::string>(), m.base.coords);
                d.matter_subloci.push_back(std::move(sub));
            }
            m.components.push_back(std::move(d));
        }

        m.mw_rank = doc.value("mw_rank", 0);
        if (doc.contains("hodge")) {
            const auto& h = doc["hodge"];
            if (h.contains("h11_X") || h.contains("h21_X"))
                m.hodge_X = {h.at("h11_X").get<int>(), h.at("h21_X").get<int>()};
            if (h.contains("h2_X")) m.h2_X = h.at("h2_X").get<int>();
            m.h3_X = h.value("h3_X", 0);
        }
        for (const auto& ch : doc.value("charged_hypers", json::array()))
            m.charged_hypers.push_back({ch.at("dim").get<int>(), ch.at("mult").get<int>()});
        m.vectors = doc.value("vectors", 0);
    } catch (const json::exception& e) {
        throw InputError(std::string("model file: ") + e.what());
    }
    return m;
}

Polynomial discriminant(const WeierstrassModel& m) {
    return m.f.pow(3) * Rational(4) + m.g.pow(2) * Rational(27);
}

JValue j_invariant_at(const WeierstrassModel& m, const std::vector<Rational>& point) {
    bool all_zero = std::all_of(point.begin(), point.end(),
                                [](const Rational& x) { return x == 0; });
    if (all_zero) throw InputError("j_invariant_at: coordinates must not all vanish");
    Rational fv = m.f.eval(point);
    Rational gv = m.g.eval(point);
    Rational numer = 4 * fv * fv * fv;
    Rational delta = numer + 27 * gv * gv;
    if (delta == 0) {
        if (fv == 0)
            throw CheckError("j undefined: f = g = 0 at the point (worse than I1 degeneration)");
        return JInfinity{};
    }
    return Rational(1728) * numer / delta;
}

const ComponentDecl& find_component(const WeierstrassModel& m, const std::string& name) {
    for (const auto& c : m.components)
        if (c.name == name) return c;
    throw InputError("unknown component '" + name + "'");
}

ComponentOrders component_orders(const WeierstrassModel& m, const std::string& component) {
    const ComponentDecl& c = find_component(m, component);
    if (!c.poly) throw InputError("component '" + component + "' has no defining polynomial");
    Polynomial delta = discriminant(m);
    int of = m.f.is_zero() ? 99 : vanishing_order(m.f, *c.poly);
    int og = m.g.is_zero() ? 99 : vanishing_order(m.g, *c.poly);
    int od = delta.is_zero() ? 99 : vanishing_order(delta, *c.poly);
    if (of >= 4 && og >= 6)
        throw CheckError("model is non-minimal along component '" + component + "'");
    return {of, og, od};
}

Polynomial residual_discriminant(const WeierstrassModel& m) {
    Polynomial delta = discriminant(m);
    for (const auto& c : m.components) {
        if (c.residual || !c.poly) continue;
        int ord = vanishing_order(delta, *c.poly);
        if (ord != c.multiplicity)
            throw CheckError("component '" + c.name + "': declared multiplicity " +
                             std::to_string(c.multiplicity) + " but Delta has order " +
                             std::to_string(ord));
        delta = *delta.divide_exact(c.poly->pow(c.multiplicity));
    }
    return delta;
}

// Adapted coordinates for a linear component sum(a_i x_i): the pivot variable
// x_j (first nonzero coefficient) is eliminated via x_j = (u - sum a_i x_i)/a_j
// where u is a fresh variable tracking the component.
namespace {

struct AdaptedChange {
    std::size_t pivot;
    std::vector<std::string> new_vars;     // [u, remaining base vars]
    std::vector<Polynomial> images;        // substitution images for old vars
    std::vector<std::string> reduced_vars; // new_vars without u
};

AdaptedChange adapted_coordinates(const Polynomial& line) {
    const auto& vars = line.variables();
    std::vector<Rational> a(vars.size(), Rational(0));
    for (const auto& [e, c] : line.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] == 1) a[i] = c;
    }
    std::size_t pivot = 0;
    while (pivot < a.size() && a[pivot] == 0) ++pivot;
    if (pivot == a.size()) throw InputError("degenerate linear form");

    AdaptedChange ch;
    ch.pivot = pivot;
    std::string u_name = "u";
    while (std::find(vars.begin(), vars.end(), u_name) != vars.end()) u_name += "_";
    ch.new_vars.push_back(u_name);
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (i != pivot) ch.new_vars.push_back(vars[i]);
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (i != pivot) ch.reduced_vars.push_back(vars[i]);

    Polynomial u = Polynomial::variable(ch.new_vars, 0);
    Polynomial pivot_image = u;
    {
        std::size_t slot = 1;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (i == pivot) continue;
            if (a[i] != 0)
                pivot_image = pivot_image - Polynomial::variable(ch.new_vars, slot) * a[i];
            ++slot;
        }
    }
    pivot_image = pivot_image * (Rational(1) / a[pivot]);

    std::size_t slot = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i == pivot) {
            ch.images.push_back(pivot_image);
        } else {
            ch.images.push_back(Polynomial::variable(ch.new_vars, slot));
            ++slot;
        }
    }
    return ch;
}

}  // namespace

Polynomial expansion_check(const WeierstrassModel& m, const std::string& component, int order) {
    const ComponentDecl& c = find_component(m, component);
    if (!c.poly) throw InputError("expansion_check: component has no defining polynomial");
    if (c.poly->total_degree() != 1)
        throw InputError("expansion_check supports only linear components");
    if (order < 1) throw InputError("expansion_check: order must be >= 1");

    AdaptedChange ch = adapted_coordinates(*c.poly);
    Polynomial adapted = discriminant(m).substitute(ch.images);

    // Coefficient of u^order, as a polynomial in the remaining variables.
    Polynomial coeff(ch.reduced_vars);
    for (const auto& [e, v] : adapted.terms()) {
        if (e[0] != order) continue;
        Exponents reduced(e.begin() + 1, e.end());
        coeff.add_term(reduced, v);
    }
    return coeff;
}

MatterPointCount matter_point_count(const WeierstrassModel& m, const std::string& component) {
    if (m.base.kind != BaseSpace::P2)
        throw InputError("matter_point_count requires a P^2 base");
    const ComponentDecl& c = find_component(m, component);
    if (!c.poly || c.poly->total_degree() != 1)
        throw InputError("matter_point_count requires a linear component");

    // Two spanning points of the line from the kernel of its coefficient row.
    std::vector<Rational> a(3, Rational(0));
    for (const auto& [e, v] : c.poly->terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] == 1) a[i] = v;
    QMatrix row(1, 3);
    for (int i = 0; i < 3; ++i) row.at(0, i) = a[i];
    QMatrix ker = row.kernel_basis();
    if (ker.cols() != 2) throw InputError("degenerate line");
    std::vector<Rational> P{ker.at(0, 0), ker.at(1, 0), ker.at(2, 0)};
    std::vector<Rational> Q{ker.at(0, 1), ker.at(1, 1), ker.at(2, 1)};

    Polynomial residual = residual_discriminant(m);
    Polynomial restricted = restrict_to_line(residual, *c.poly, P, Q);
    if (restricted.is_zero())
        throw CheckError("component '" + component +
                         "' shares a factor with the residual discriminant");

    // Square-freeness of a binary form via the affine chart plus the degree
    // drop at t = 0.
    auto binary_square_free = [](const Polynomial& bf) {
        std::vector<std::string> sv{"s"};
        Polynomial affine(sv);
        int deg = bf.total_degree();
        for (const auto& [e, v] : bf.terms()) affine.add_term({e[0]}, v);
        if (affine.is_zero()) return false;  // pure power of t beyond t^1
        int drop = deg - affine.total_degree();
        if (drop > 1) return false;
        if (affine.is_constant()) return true;
        return is_square_free(affine);
    };

    MatterPointCount out;
    out.total_degree = restricted.total_degree();

    Polynomial remaining = restricted;
    for (const auto& sub : c.matter_subloci) {
        Polynomial sub_l = restrict_to_line(sub.poly, *c.poly, P, Q);
        MatterSubCount sc;
        sc.name = sub.name;
        if (sub_l.is_zero() || sub_l.is_constant()) {
            sc.points = 0;
            sc.multiplicity = 0;
            sc.square_free = false;
        } else {
            sc.points = sub_l.total_degree();
            sc.multiplicity = vanishing_order(remaining, sub_l);
            sc.square_free = binary_square_free(sub_l);
            if (sc.multiplicity > 0)
                remaining = *remaining.divide_exact(sub_l.pow(sc.multiplicity));
        }
        out.subloci.push_back(std::move(sc));
    }
    out.z_points = std::max(remaining.total_degree(), 0);
    out.z_square_free = binary_square_free(remaining);
    return out;
}

GenericityCheck genericity_check(const WeierstrassModel& m) {
    if (m.base.kind != BaseSpace::P1)
        throw InputError("genericity_check applies to P^1 bases");
    Polynomial delta = discriminant(m);
    if (delta.is_zero()) throw CheckError("identically singular model (Delta = 0)");

    // Affine chart: second coordinate = 1.
    std::vector<std::string> sv{m.base.coords[0]};
    Polynomial affine(sv);
    for (const auto& [e, v] : delta.terms()) affine.add_term({e[0]}, v);

    GenericityCheck out;
    out.degree_drop = delta.total_degree() - std::max(affine.total_degree(), 0);
    out.affine_square_free = !affine.is_zero() && !affine.is_constant()
                                 ? is_square_free(affine)
                                 : !affine.is_zero();
    out.ok = out.affine_square_free && out.degree_drop <= 1;
    return out;
}

}  // namespace elfic

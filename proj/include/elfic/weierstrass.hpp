#pragma once

// Weierstrass models y^2 z = x^3 + f x z^2 + g z^3 over P^1 or P^2:
// discriminant, j-invariant, vanishing orders along declared components,
// residual discriminant, expansion coefficients along linear components, and
// matter point counts on component lines.

#include "elfic/kodaira.hpp"
#include "elfic/polynomial.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace elfic {

struct BaseSpace {
    enum Kind { P1, P2 } kind;
    std::vector<std::string> coords;  // 2 for P1, 3 for P2

    int h11() const { return 1; }
    bool regular() const { return true; }  // b1 = b3 = 0 for both bases
    int expected_deg_f() const { return kind == P1 ? 8 : 12; }   // -4K
    int expected_deg_g() const { return kind == P1 ? 12 : 18; }  // -6K
};

struct SubLocus {
    std::string name;
    Polynomial poly;
};

struct ComponentDecl {
    std::string name;
    std::optional<Polynomial> poly;  // absent for the residual component
    int multiplicity = 1;            // expected order in Delta
    KodairaType kodaira = KodairaType::make_In(1);
    int n_components = 1;
    bool residual = false;
    int h1_curve = 0;                       // h^1 of the component curve
    std::vector<SubLocus> matter_subloci;   // named loci split off on the line
};

struct ChargedHyper {
    int dim;
    int mult;
};

struct WeierstrassModel {
    BaseSpace base;
    Polynomial f, g;
    std::vector<ComponentDecl> components;
    int mw_rank = 0;
    std::optional<std::pair<int, int>> hodge_X;  // (h11, h21) of the resolution
    std::optional<int> h2_X;                     // surface (K3) case
    int h3_X = 0;                                // surface case, 0 for K3
    std::vector<ChargedHyper> charged_hypers;
    int vectors = 0;  // dim of the gauge group, user input
};

// Parse and validate the JSON model document (see README for the schema).
WeierstrassModel load_model(const std::string& json_text);

Polynomial discriminant(const WeierstrassModel& m);

struct JInfinity {};
using JValue = std::variant<Rational, JInfinity>;

// 1728 * 4 f^3 / Delta at a rational base point; JInfinity over Delta when
// f != 0; throws CheckError at points with f = g = 0.
JValue j_invariant_at(const WeierstrassModel& m, const std::vector<Rational>& point);

struct ComponentOrders {
    int ord_f, ord_g, ord_delta;
};

// Vanishing orders of f, g, Delta along a declared (non-residual) component.
// Throws CheckError when the model is non-minimal along the component.
ComponentOrders component_orders(const WeierstrassModel& m, const std::string& component);

// Delta with every declared component^multiplicity divided out, after
// verifying each declared multiplicity.
Polynomial residual_discriminant(const WeierstrassModel& m);

// Coefficient of component^order in Delta, in coordinates adapted to a
// linear component (the component variable is eliminated; result is a
// polynomial in the remaining base variables).
Polynomial expansion_check(const WeierstrassModel& m, const std::string& component, int order);

struct MatterSubCount {
    std::string name;
    int points;        // degree of the sublocus restricted to the line
    int multiplicity;  // order of the sublocus factor in the restriction
    bool square_free;
};

struct MatterPointCount {
    int total_degree;  // of the residual discriminant restricted to the line
    std::vector<MatterSubCount> subloci;
    int z_points;  // degree left after splitting off the declared subloci
    bool z_square_free;
};

// Restrict the residual discriminant to a linear component on P^2 and split
// off the declared subloci with their multiplicities.
MatterPointCount matter_point_count(const WeierstrassModel& m, const std::string& component);

struct GenericityCheck {
    bool affine_square_free;
    int degree_drop;  // multiplicity of the point at infinity in Delta
    bool ok;          // square-free and degree drop at most 1
};

// P^1 models only: distinctness of the discriminant points.
GenericityCheck genericity_check(const WeierstrassModel& m);

const ComponentDecl& find_component(const WeierstrassModel& m, const std::string& name);

}  // namespace elfic

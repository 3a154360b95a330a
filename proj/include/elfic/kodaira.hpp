#pragma once

// Kodaira fiber types: classification from vanishing orders of (f, g, Delta),
// SL(2,Z) monodromy representatives, nilpotent logarithms, and fiber
// component counts.

#include "elfic/qmatrix.hpp"

#include <string>

namespace elfic {

struct KodairaType {
    enum Kind { In, InStar, II, III, IV, IIStar, IIIStar, IVStar } kind;
    int n = 0;  // In: n >= 0 (I0 = smooth); InStar: n >= 0

    static KodairaType make_In(int n);
    static KodairaType make_InStar(int n);
    static KodairaType make(Kind k);  // for the six fixed types

    bool operator==(const KodairaType&) const = default;
    bool is_smooth() const { return kind == In && n == 0; }

    // ASCII tags: "I0", "I1", ..., "I0*", "I1*", ..., "II", "III", "IV",
    // "IV*", "III*", "II*".
    std::string str() const;
    static KodairaType parse(const std::string& tag);
};

// Map the vanishing orders (ord f, ord g, ord Delta) along a component to the
// fiber type of the standard Kodaira table.  Throws CheckError for
// non-minimal input (ord f >= 4 and ord g >= 6) and InputError for triples
// not realized by any fiber.
KodairaType classify(int ord_f, int ord_g, int ord_delta);

// Standard conjugacy-class representative of the monodromy around the fiber;
// always determinant 1.
QMatrix monodromy_matrix(const KodairaType& t);

// N = log T = T - I for 2x2 unipotents ((T-I)^2 = 0); throws otherwise.
QMatrix log_nilpotent(const QMatrix& T);

bool is_unipotent(const QMatrix& T);

// Irreducible components of the fiber, split form.  For non-split fibers the
// caller supplies its own count, validated against [1, split count].
int fiber_component_count(const KodairaType& t);

// Resolve the component count: the split-form table value, or the declared
// count for non-split fibers (validated against [1, split count]).
int fiber_component_count(const KodairaType& t, bool split, int declared = 1);

// dim ker(T - 1) for the standard representative; this is the stalk of the
// pushforward at the fiber.
int invariant_dim(const KodairaType& t);

}  // namespace elfic

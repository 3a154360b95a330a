#pragma once

// Sparse multivariate polynomials over Q with a canonical graded-lex term
// order, an expression parser, and the divisibility utilities used for
// discriminant analysis.  Variable counts are tiny (at most 3), so exponent
// vectors are dense.

#include "elfic/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elfic {

using Exponents = std::vector<int>;

// Graded lexicographic, descending: higher total degree first, ties broken
// lexicographically with the first variable heaviest.  Map iteration order is
// therefore the canonical printing order.
struct GradedLexDesc {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

class Polynomial {
  public:
    using TermMap = std::map<Exponents, Rational, GradedLexDesc>;

    Polynomial() = default;  // zero polynomial in zero variables
    explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Polynomial constant(std::vector<std::string> vars, const Rational& c);
    static Polynomial variable(const std::vector<std::string>& vars, std::size_t index);

    // Grammar: integers, rationals a/b, declared variable names, + - * ^,
    // parentheses.  Whitespace insignificant, implicit products rejected.
    static Polynomial parse(std::string_view text, const std::vector<std::string>& vars);

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // 0 for the zero polynomial
    int total_degree() const;         // -1 for the zero polynomial
    int degree_in(std::size_t var) const;
    bool is_homogeneous() const;
    std::size_t term_count() const { return terms_.size(); }
    Rational coefficient(const Exponents& e) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial pow(unsigned long e) const;
    bool operator==(const Polynomial& rhs) const;

    // Exact quotient, or nullopt when d does not divide *this.
    std::optional<Polynomial> divide_exact(const Polynomial& d) const;

    Polynomial derivative(std::size_t var) const;

    // Replace variable i by images[i]; all images must share one target ring.
    Polynomial substitute(const std::vector<Polynomial>& images) const;

    // Evaluation over any field with Rational-convertible scalars.
    Rational eval(const std::vector<Rational>& point) const;
    std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

    // Canonical form: graded-lex descending, explicit '*', '^' for exponents.
    // parse(str()) == *this.
    std::string str() const;

    void add_term(const Exponents& e, const Rational& c);  // accumulates, drops zeros

  private:
    void check_same_ring(const Polynomial& rhs) const;

    std::vector<std::string> vars_;
    TermMap terms_;
};

// Largest k with d^k dividing p exactly.  p must be nonzero; d nonzero and
// non-constant.
int vanishing_order(const Polynomial& p, const Polynomial& d);

// Pull p back along the degree-1 parametrization (s,t) -> s*P + t*Q of the
// projective line {line = 0}.  P and Q must be distinct points on the line.
// Returns a homogeneous binary form in variables (s, t) of degree <= deg p.
Polynomial restrict_to_line(const Polynomial& p, const Polynomial& line,
                            const std::vector<Rational>& P, const std::vector<Rational>& Q);

// Univariate helpers (polynomials in exactly one variable).
Polynomial poly_gcd_univariate(const Polynomial& a, const Polynomial& b);  // monic
Polynomial square_free_part(const Polynomial& p);                         // monic p/gcd(p,p')
bool is_square_free(const Polynomial& p);

}  // namespace elfic

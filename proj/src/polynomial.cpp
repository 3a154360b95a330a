#include "elfic/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace elfic {

bool GradedLexDesc::operator()(const Exponents& a, const Exponents& b) const {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial Polynomial::constant(std::vector<std::string> vars, const Rational& c) {
    Polynomial p(std::move(vars));
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
}

Polynomial Polynomial::variable(const std::vector<std::string>& vars, std::size_t index) {
    if (index >= vars.size()) throw InputError("variable index out of range");
    Polynomial p(vars);
    Exponents e(vars.size(), 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    if (e.size() != vars_.size()) throw InputError("exponent vector has wrong length");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational Polynomial::constant_value() const {
    if (!is_constant()) throw InputError("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.begin()->first;  // graded order: first term has max degree
    int d = 0;
    for (int x : e) d += x;
    return d;
}

int Polynomial::degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = total_degree();
    for (const auto& [e, c] : terms_) {
        int t = 0;
        for (int x : e) t += x;
        if (t != d) return false;
    }
    return true;
}

Rational Polynomial::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::check_same_ring(const Polynomial& rhs) const {
    if (vars_ != rhs.vars_) throw InputError("mismatched variable lists");
}

Polynomial Polynomial::operator-() const {
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    check_same_ring(rhs);
    Polynomial r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    check_same_ring(rhs);
    Polynomial r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    check_same_ring(rhs);
    Polynomial r(vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(vars_);
    if (c == 0) return r;
    for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
    return r;
}

Polynomial Polynomial::pow(unsigned long e) const {
    Polynomial result = Polynomial::constant(vars_, 1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = (e >>= 1) ? base * base : base;
    }
    return result;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    return vars_ == rhs.vars_ && terms_ == rhs.terms_;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
    check_same_ring(d);
    if (d.is_zero()) throw InputError("division by zero polynomial");
    Polynomial q(vars_);
    Polynomial r = *this;
    const auto& [elead, clead] = *d.terms_.begin();
    while (!r.is_zero()) {
        const auto& [er, cr] = *r.terms_.begin();
        Exponents e(er.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = er[i] - elead[i];
            if (e[i] < 0) return std::nullopt;  // leading term not divisible
        }
        Polynomial t(vars_);
        t.add_term(e, cr / clead);
        q = q + t;
        r = r - t * d;
    }
    return q;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        r.add_term(d, c * e[var]);
    }
    return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != vars_.size()) throw InputError("substitution needs one image per variable");
    for (const auto& im : images)
        if (im.variables() != images[0].variables())
            throw InputError("substitution images must share one ring");
    std::vector<std::string> tvars =
        images.empty() ? std::vector<std::string>{} : images[0].variables();

    // Cache powers of each image up to the largest exponent that occurs.
    std::vector<std::vector<Polynomial>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        powers[i].push_back(Polynomial::constant(tvars, 1));
        int maxe = degree_in(i);
        for (int k = 1; k <= maxe; ++k) powers[i].push_back(powers[i].back() * images[i]);
    }

    Polynomial r(tvars);
    for (const auto& [e, c] : terms_) {
        Polynomial t = Polynomial::constant(tvars, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t = t * powers[i][e[i]];
        r = r + t;
    }
    return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    if (point.size() != vars_.size()) throw InputError("evaluation point has wrong arity");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

std::complex<double> Polynomial::eval(const std::vector<std::complex<double>>& point) const {
    if (point.size() != vars_.size()) throw InputError("evaluation point has wrong arity");
    std::complex<double> acc = 0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = to_complex(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;

        bool has_vars = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
        bool printed = false;
        if (a != 1 || !has_vars) {
            out << to_string(a);
            printed = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (printed) out << "*";
            out << vars_[i];
            if (e[i] > 1) out << "^" << e[i];
            printed = true;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Parser: recursive descent.
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ('^' nat)?
//   atom   := number | var | '(' expr ')'
//   number := digits ('/' digits)?

namespace {

struct Token {
    enum Kind { Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
  public:
    explicit Lexer(std::string_view s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= s_.size()) {
            tok_ = {Token::End, "", start};
            return;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            tok_ = {Token::Int, std::string(s_.substr(start, i_ - start)), start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            tok_ = {Token::Ident, std::string(s_.substr(start, i_ - start)), start};
            return;
        }
        ++i_;
        switch (c) {
            case '+': tok_ = {Token::Plus, "+", start}; return;
            case '-': tok_ = {Token::Minus, "-", start}; return;
            case '*': tok_ = {Token::Star, "*", start}; return;
            case '^': tok_ = {Token::Caret, "^", start}; return;
            case '/': tok_ = {Token::Slash, "/", start}; return;
            case '(': tok_ = {Token::LParen, "(", start}; return;
            case ')': tok_ = {Token::RParen, ")", start}; return;
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

    std::string_view s_;
    std::size_t i_ = 0;
    Token tok_{Token::End, "", 0};
};

class Parser {
  public:
    Parser(std::string_view text, const std::vector<std::string>& vars)
        : lex_(text), vars_(vars) {}

    Polynomial run() {
        Polynomial p = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::End) throw ParseError("unexpected trailing input '" + t.text + "'", t.pos);
        return p;
    }

  private:
    Polynomial expr() {
        Polynomial acc = term();
        while (true) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Plus) {
                lex_.take();
                acc = acc + term();
            } else if (t.kind == Token::Minus) {
                lex_.take();
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (lex_.peek().kind == Token::Star) {
            lex_.take();
            acc = acc * factor();
        }
        return acc;
    }

    Polynomial factor() {
        if (lex_.peek().kind == Token::Minus) {
            lex_.take();
            return -factor();
        }
        Polynomial base = atom();
        if (lex_.peek().kind == Token::Caret) {
            Token caret = lex_.take();
            const Token& t = lex_.peek();
            if (t.kind == Token::Minus) throw ParseError("negative exponent", t.pos);
            if (t.kind != Token::Int) throw ParseError("exponent must be a nonnegative integer", caret.pos);
            unsigned long e = std::stoul(lex_.take().text);
            return base.pow(e);
        }
        return base;
    }

    Polynomial atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Int: {
                BigInt num(t.text);
                if (lex_.peek().kind == Token::Slash) {
                    Token slash = lex_.take();
                    const Token& d = lex_.peek();
                    if (d.kind != Token::Int)
                        throw ParseError("expected integer denominator after '/'", slash.pos);
                    BigInt den(lex_.take().text);
                    if (den == 0) throw ParseError("zero denominator", d.pos);
                    return Polynomial::constant(vars_, Rational(num, den));
                }
                return Polynomial::constant(vars_, Rational(num));
            }
            case Token::Ident: {
                auto it = std::find(vars_.begin(), vars_.end(), t.text);
                if (it == vars_.end())
                    throw ParseError("undeclared variable '" + t.text + "'", t.pos);
                return Polynomial::variable(vars_, it - vars_.begin());
            }
            case Token::LParen: {
                Polynomial p = expr();
                const Token& r = lex_.peek();
                if (r.kind != Token::RParen) throw ParseError("expected ')'", r.pos);
                lex_.take();
                return p;
            }
            default:
                throw ParseError("unexpected token '" + t.text + "'", t.pos);
        }
    }

    Lexer lex_;
    const std::vector<std::string>& vars_;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, const std::vector<std::string>& vars) {
    return Parser(text, vars).run();
}

// ---------------------------------------------------------------------------

int vanishing_order(const Polynomial& p, const Polynomial& d) {
    if (p.is_zero()) throw InputError("vanishing order of the zero polynomial is undefined");
    if (d.is_zero() || d.is_constant()) throw InputError("divisor must be nonzero and non-constant");
    int k = 0;
    Polynomial cur = p;
    while (true) {
        auto q = cur.divide_exact(d);
        if (!q) return k;
        cur = *q;
        ++k;
    }
}

Polynomial restrict_to_line(const Polynomial& p, const Polynomial& line,
                            const std::vector<Rational>& P, const std::vector<Rational>& Q) {
    if (p.variables().size() != 3 || line.variables() != p.variables())
        throw InputError("restrict_to_line expects polynomials in 3 shared variables");
    if (line.is_zero() || line.total_degree() != 1 || !line.is_homogeneous())
        throw InputError("line must be a homogeneous linear form");
    if (P.size() != 3 || Q.size() != 3) throw InputError("points must have 3 coordinates");
    if (line.eval(P) != 0 || line.eval(Q) != 0)
        throw InputError("parametrization points must lie on the line");
    // P, Q must be distinct projective points: some 2x2 minor nonzero.
    bool independent = false;
    for (int i = 0; i < 3 && !independent; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (P[i] * Q[j] - P[j] * Q[i] != 0) {
                independent = true;
                break;
            }
    if (!independent) throw InputError("parametrization points coincide");

    std::vector<std::string> st{"s", "t"};
    Polynomial s = Polynomial::variable(st, 0);
    Polynomial t = Polynomial::variable(st, 1);
    std::vector<Polynomial> images;
    for (int i = 0; i < 3; ++i) images.push_back(s * P[i] + t * Q[i]);
    return p.substitute(images);
}

// Dense coefficient view of a univariate polynomial, index = exponent.
static std::vector<Rational> univariate_coeffs(const Polynomial& p) {
    if (p.variables().size() != 1) throw InputError("expected a univariate polynomial");
    std::vector<Rational> c(std::max(0, p.total_degree()) + 1, Rational(0));
    for (const auto& [e, v] : p.terms()) c[e[0]] = v;
    return c;
}

static Polynomial from_coeffs(const std::vector<std::string>& vars, const std::vector<Rational>& c) {
    Polynomial p(vars);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) p.add_term({static_cast<int>(i)}, c[i]);
    return p;
}

static void make_monic(std::vector<Rational>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) return;
    Rational lead = c.back();
    for (auto& x : c) x /= lead;
}

// Remainder of a by b on dense coefficient vectors (b monic, nonempty).
static std::vector<Rational> poly_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (a.size() >= b.size()) {
        Rational factor = a.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

Polynomial poly_gcd_univariate(const Polynomial& pa, const Polynomial& pb) {
    if (pa.variables() != pb.variables())
        throw InputError("gcd operands must share one variable");
    std::vector<Rational> a = univariate_coeffs(pa), b = univariate_coeffs(pb);
    make_monic(a);
    make_monic(b);
    while (!b.empty()) {
        auto r = poly_rem(a, b);
        make_monic(r);
        a = b;
        b = r;
    }
    if (a.empty()) a = {Rational(0)};
    return from_coeffs(pa.variables(), a);
}

Polynomial square_free_part(const Polynomial& p) {
    if (p.is_zero()) throw InputError("square-free part of zero is undefined");
    if (p.variables().size() != 1) throw InputError("square_free_part expects a univariate polynomial");
    if (p.is_constant()) return Polynomial::constant(p.variables(), 1);
    Polynomial g = poly_gcd_univariate(p, p.derivative(0));
    Polynomial q = *p.divide_exact(g);
    auto c = univariate_coeffs(q);
    make_monic(c);
    return from_coeffs(p.variables(), c);
}

bool is_square_free(const Polynomial& p) {
    return poly_gcd_univariate(p, p.derivative(0)).is_constant();
}

}  // namespace elfic

#include "elfic/mwforms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace elfic {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kTwoPiI(0.0, 2.0 * kPi);

double dist_to_int(double x) { return std::abs(x - std::round(x)); }

double frac01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    return f;
}

// Optimal complex AGM: at each step pick the square-root branch closer to
// the arithmetic mean.
Complex agm(Complex x, Complex y) {
    if (x == Complex(0) || y == Complex(0)) throw NumericError("AGM of zero argument");
    for (int it = 0; it < 300; ++it) {
        Complex m = (x + y) * 0.5;
        Complex s = std::sqrt(x * y);
        if (std::abs(m - s) > std::abs(m + s)) s = -s;
        x = m;
        y = s;
        if (std::abs(x - y) <= 1e-15 * std::abs(x)) return (x + y) * 0.5;
    }
    throw NumericError("AGM non-convergence (ill-conditioned root separation)");
}

struct ReducedLattice {
    Complex w1;   // scale; lattice = w1 * (Z + tau Z)
    Complex tau;  // in the fundamental domain
};

// SL(2,Z)-reduce tau = wb/wa, keeping the same lattice.
ReducedLattice reduce_lattice(Complex wa, Complex wb) {
    Complex tau = wb / wa;
    if (tau.imag() <= 0) throw NumericError("lattice basis is degenerate");
    for (int it = 0; it < 200; ++it) {
        double n = std::round(tau.real());
        wb -= n * wa;
        tau = wb / wa;
        if (std::abs(tau) < 1.0 - 1e-14) {
            std::swap(wa, wb);
            wa = -wa;  // tau -> -1/tau
            tau = wb / wa;
        } else {
            return {wa, tau};
        }
    }
    throw NumericError("lattice reduction failed");
}

Complex eisenstein_e4(Complex q) {
    Complex s = 0, qn = 1;
    for (int n = 1; n <= 48; ++n) {
        qn *= q;
        double n3 = double(n) * n * n;
        s += n3 * qn / (1.0 - qn);
    }
    return 1.0 + 240.0 * s;
}

Complex eisenstein_e6(Complex q) {
    Complex s = 0, qn = 1;
    for (int n = 1; n <= 48; ++n) {
        qn *= q;
        double n5 = double(n) * n * n * n * n;
        s += n5 * qn / (1.0 - qn);
    }
    return 1.0 - 504.0 * s;
}

// g2, g3 of the lattice w1*(Z + tau Z).
std::pair<Complex, Complex> lattice_invariants(const ReducedLattice& rl) {
    Complex q = std::exp(kTwoPiI * rl.tau);
    Complex c = kTwoPiI / rl.w1;
    Complex c2 = c * c;
    Complex c4 = c2 * c2;
    Complex g2 = c4 * eisenstein_e4(q) / 12.0;
    Complex g3 = -c4 * c2 * eisenstein_e6(q) / 216.0;
    return {g2, g3};
}

}  // namespace

std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() < 2) return {};
    Complex lead = coeffs.back();
    for (auto& c : coeffs) c /= lead;
    const std::size_t n = coeffs.size() - 1;

    double radius = 1.0;
    for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(coeffs[i]));
    radius += 1.0;

    auto eval = [&](Complex z) {
        Complex acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
        return acc;
    };
    auto eval_d = [&](Complex z) {
        Complex acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * z + coeffs[i] * double(i);
        return acc;
    };

    // Durand-Kerner from a spiral of start values.
    std::vector<Complex> r(n);
    Complex seed(0.4, 0.9);
    Complex cur = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        cur *= seed;
        r[k] = radius * cur;
    }
    for (int it = 0; it < 2000; ++it) {
        double moved = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            Complex denom = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) denom *= r[k] - r[j];
            if (std::abs(denom) == 0.0) {
                r[k] += 1e-8 * radius;  // split coincident iterates
                continue;
            }
            Complex delta = eval(r[k]) / denom;
            r[k] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14 * radius) break;
    }
    for (auto& root : r)
        for (int it = 0; it < 8; ++it) {
            Complex d = eval_d(root);
            if (std::abs(d) < 1e-300) break;
            root -= eval(root) / d;
        }
    return r;
}

LatticeData period_lattice(Complex f_val, Complex g_val) {
    Complex disc = 4.0 * f_val * f_val * f_val + 27.0 * g_val * g_val;
    double scale = std::max({1.0, std::abs(f_val), std::abs(g_val)});
    if (std::abs(disc) <= 1e-12 * scale * scale)
        throw NumericError("period_lattice: discriminant vanishes");

    std::vector<Complex> e = polynomial_roots({g_val, f_val, Complex(0), Complex(1)});
    if (e.size() != 3) throw NumericError("period_lattice: root finder failed");

    // Try root labelings (and both AGM pairings) until the Eisenstein
    // verification accepts a basis.
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::string last_err = "no labeling tried";
    for (const auto& p : perms) {
        Complex e1 = e[p[0]], e2 = e[p[1]], e3 = e[p[2]];
        Complex a = std::sqrt(e1 - e3);
        Complex b = std::sqrt(e1 - e2);
        Complex c = std::sqrt(e2 - e3);
        for (int pairing = 0; pairing < 2; ++pairing) {
            try {
                Complex ma = pairing == 0 ? agm(a, c) : agm(a, b);
                Complex mb = pairing == 0 ? agm(a, b) : agm(a, c);
                // Periods of dx/y are 2pi/M; the lattice of p (with
                // y = p'/2) is half of that.
                LatticeData lat;
                lat.omega_a = kPi / ma;
                lat.omega_b = kPi * Complex(0, 1) / mb;
                lat.tau = lat.omega_b / lat.omega_a;
                lat.swapped = false;
                if (lat.tau.imag() == 0.0) continue;
                if (lat.tau.imag() < 0) {
                    lat.omega_b = -lat.omega_b;
                    lat.tau = -lat.tau;
                    lat.swapped = true;
                }
                ReducedLattice rl = reduce_lattice(lat.omega_a, lat.omega_b);
                auto [g2, g3] = lattice_invariants(rl);
                double s2 = std::max(1.0, std::abs(f_val));
                double s3 = std::max(1.0, std::abs(g_val));
                if (std::abs(g2 - (-4.0 * f_val)) <= 1e-8 * 4.0 * s2 &&
                    std::abs(g3 - (-4.0 * g_val)) <= 1e-8 * 4.0 * s3) {
                    lat.f_val = f_val;
                    lat.g_val = g_val;
                    return lat;
                }
                last_err = "Eisenstein verification rejected the candidate basis";
            } catch (const NumericError& err) {
                last_err = err.what();
            }
        }
    }
    throw NumericError(std::string("period_lattice failed: ") + last_err);
}

Complex weierstrass_p(Complex z, const LatticeData& lat) {
    ReducedLattice rl = reduce_lattice(lat.omega_a, lat.omega_b);
    Complex w = z / rl.w1;
    w -= std::round(w.imag() / rl.tau.imag()) * rl.tau;
    w -= std::round(w.real());
    Complex q = std::exp(kTwoPiI * rl.tau);
    Complex u = std::exp(kTwoPiI * w);

    Complex sum = 1.0 / 12.0 + u / ((1.0 - u) * (1.0 - u));
    Complex qn = 1.0;
    for (int n = 1; n <= 64; ++n) {
        qn *= q;
        if (std::abs(qn) < 1e-20) break;
        Complex v = qn * u, vv = qn / u;
        sum += v / ((1.0 - v) * (1.0 - v)) + vv / ((1.0 - vv) * (1.0 - vv)) -
               2.0 * qn / ((1.0 - qn) * (1.0 - qn));
    }
    Complex pref = kTwoPiI / rl.w1;
    return pref * pref * sum;
}

Complex weierstrass_p_prime(Complex z, const LatticeData& lat) {
    ReducedLattice rl = reduce_lattice(lat.omega_a, lat.omega_b);
    Complex w = z / rl.w1;
    w -= std::round(w.imag() / rl.tau.imag()) * rl.tau;
    w -= std::round(w.real());
    Complex q = std::exp(kTwoPiI * rl.tau);
    Complex u = std::exp(kTwoPiI * w);

    auto cube = [](Complex x) { return x * x * x; };
    Complex sum = u * (1.0 + u) / cube(1.0 - u);
    Complex qn = 1.0;
    for (int n = 1; n <= 64; ++n) {
        qn *= q;
        if (std::abs(qn) < 1e-20) break;
        Complex v = qn * u, vv = qn / u;
        sum += v * (1.0 + v) / cube(1.0 - v) - vv * (1.0 + vv) / cube(1.0 - vv);
    }
    Complex pref = kTwoPiI / rl.w1;
    return pref * pref * pref * sum;
}

std::pair<double, double> elliptic_log(Complex x, Complex y, const LatticeData& lat) {
    double s = std::max({1.0, std::abs(x), std::pow(std::abs(lat.f_val), 0.5),
                         std::pow(std::abs(lat.g_val), 1.0 / 3.0)});
    Complex on_curve = y * y - (x * x * x + lat.f_val * x + lat.g_val);
    if (std::abs(on_curve) > 1e-7 * s * s * s)
        throw NumericError("elliptic_log: point does not satisfy the curve equation");

    // 2-torsion points sit at exact half-lattice coordinates; locate by
    // comparing x with p at the three half-periods (Newton would stall on
    // p' = 0 there).
    if (std::abs(y) <= 1e-9 * std::pow(s, 1.5)) {
        const std::pair<double, double> halves[3] = {{0.0, 0.5}, {0.5, 0.0}, {0.5, 0.5}};
        double best = 1e300;
        std::pair<double, double> best_f{0, 0};
        for (const auto& [h1, h2] : halves) {
            Complex z = h1 * lat.omega_b + h2 * lat.omega_a;
            double d = std::abs(weierstrass_p(z, lat) - x);
            if (d < best) {
                best = d;
                best_f = {h1, h2};
            }
        }
        if (best > 1e-6 * s) throw NumericError("elliptic_log: 2-torsion match failed");
        return best_f;
    }

    Complex z;
    bool found = false;
    for (int grid = 24; grid <= 96 && !found; grid *= 2) {
        // Coarse search over the fundamental cell.
        double best = 1e300;
        Complex zbest;
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                double alpha = (i + 0.5) / grid, beta = (j + 0.5) / grid;
                Complex zc = alpha * lat.omega_b + beta * lat.omega_a;
                Complex pv = weierstrass_p(zc, lat);
                double d = std::abs(pv - x) / (1.0 + std::abs(pv) + std::abs(x));
                if (d < best) {
                    best = d;
                    zbest = zc;
                }
            }
        z = zbest;
        for (int it = 0; it < 80; ++it) {
            Complex pv = weierstrass_p(z, lat);
            if (std::abs(pv - x) <= 1e-13 * std::max(1.0, std::abs(x))) {
                found = true;
                break;
            }
            Complex dp = weierstrass_p_prime(z, lat);
            if (std::abs(dp) < 1e-280) break;
            Complex step = (pv - x) / dp;
            // Damp huge steps so Newton stays within the basin.
            double maxstep = 0.25 * std::min(std::abs(lat.omega_a), std::abs(lat.omega_b));
            if (std::abs(step) > maxstep) step *= maxstep / std::abs(step);
            z -= step;
        }
    }
    if (!found) throw NumericError("elliptic_log: Newton iteration failed to converge");

    if (std::abs(weierstrass_p_prime(z, lat) / 2.0 - y) >
        std::abs(weierstrass_p_prime(-z, lat) / 2.0 - y))
        z = -z;

    if (std::abs(weierstrass_p(z, lat) - x) > 1e-9 * std::max(1.0, std::abs(x)))
        throw NumericError("elliptic_log: round trip exceeded 1e-9");

    // Decompose z = f1 omega_b + f2 omega_a over R.
    double det = lat.omega_b.real() * lat.omega_a.imag() - lat.omega_b.imag() * lat.omega_a.real();
    if (std::abs(det) < 1e-300) throw NumericError("elliptic_log: degenerate basis");
    double f1 = (z.real() * lat.omega_a.imag() - z.imag() * lat.omega_a.real()) / det;
    double f2 = (z.imag() * lat.omega_b.real() - z.real() * lat.omega_b.imag()) / det;
    return {frac01(f1), frac01(f2)};
}

LatticeData match_basis(const LatticeData& frame, const LatticeData& fresh) {
    // Express a frame vector in fresh's basis: v = p*omega_b + q*omega_a.
    auto coords = [&](Complex v) {
        double det = fresh.omega_b.real() * fresh.omega_a.imag() -
                     fresh.omega_b.imag() * fresh.omega_a.real();
        if (std::abs(det) < 1e-300) throw NumericError("match_basis: degenerate basis");
        double p = (v.real() * fresh.omega_a.imag() - v.imag() * fresh.omega_a.real()) / det;
        double q = (v.imag() * fresh.omega_b.real() - v.real() * fresh.omega_b.imag()) / det;
        return std::pair<double, double>(p, q);
    };
    auto [pb, qb] = coords(frame.omega_b);
    auto [pa, qa] = coords(frame.omega_a);
    if (dist_to_int(pb) > 0.1 || dist_to_int(qb) > 0.1 || dist_to_int(pa) > 0.1 ||
        dist_to_int(qa) > 0.1)
        throw NumericError("continuation step rejected (lattice mismatch)");
    long b11 = std::lround(pb), b12 = std::lround(qb);
    long b21 = std::lround(pa), b22 = std::lround(qa);
    if (std::labs(b11 * b22 - b12 * b21) != 1)
        throw NumericError("continuation step rejected (non-unimodular fit)");

    LatticeData out = fresh;
    out.omega_b = double(b11) * fresh.omega_b + double(b12) * fresh.omega_a;
    out.omega_a = double(b21) * fresh.omega_b + double(b22) * fresh.omega_a;
    out.tau = out.omega_b / out.omega_a;
    if (out.tau.imag() <= 0) throw NumericError("continuation step rejected (orientation)");
    return out;
}

// ---------------------------------------------------------------------------
// Rational sections.

namespace {

using RatFunc = RationalSection::RatFunc;

RatFunc make_ratfunc(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw InputError("section expression: division by zero");
    if (!num.is_zero()) {
        Polynomial g = poly_gcd_univariate(num, den);
        if (g.total_degree() > 0) {
            num = *num.divide_exact(g);
            den = *den.divide_exact(g);
        }
    }
    return {std::move(num), std::move(den)};
}

RatFunc rf_const(const std::vector<std::string>& vars, const Rational& c) {
    return {Polynomial::constant(vars, c), Polynomial::constant(vars, 1)};
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
    return make_ratfunc(a.num * b.den + b.num * a.den, a.den * b.den);
}
RatFunc rf_sub(const RatFunc& a, const RatFunc& b) {
    return make_ratfunc(a.num * b.den - b.num * a.den, a.den * b.den);
}
RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
    return make_ratfunc(a.num * b.num, a.den * b.den);
}
RatFunc rf_div(const RatFunc& a, const RatFunc& b) {
    if (b.num.is_zero()) throw InputError("section expression: division by zero");
    return make_ratfunc(a.num * b.den, a.den * b.num);
}
RatFunc rf_neg(const RatFunc& a) { return {-a.num, a.den}; }
RatFunc rf_pow(const RatFunc& a, unsigned long e) {
    return {a.num.pow(e), a.den.pow(e)};
}

// expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
// factor := '-' factor | atom ('^' nat)?; atom := number | var | '(' expr ')'
class RatParser {
  public:
    RatParser(std::string_view text, std::string var) : s_(text), var_(std::move(var)) {}

    RatFunc run() {
        RatFunc r = expr();
        skip_ws();
        if (i_ < s_.size()) throw ParseError("unexpected trailing input", i_);
        return r;
    }

  private:
    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }

    RatFunc expr() {
        RatFunc acc = term();
        while (true) {
            if (eat('+')) acc = rf_add(acc, term());
            else if (eat('-')) acc = rf_sub(acc, term());
            else return acc;
        }
    }

    RatFunc term() {
        RatFunc acc = factor();
        while (true) {
            if (eat('*')) acc = rf_mul(acc, factor());
            else if (eat('/')) acc = rf_div(acc, factor());
            else return acc;
        }
    }

    RatFunc factor() {
        if (eat('-')) return rf_neg(factor());
        RatFunc base = atom();
        if (eat('^')) {
            skip_ws();
            if (peek() == '-') throw ParseError("negative exponent", i_);
            std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (i_ == start) throw ParseError("exponent must be a nonnegative integer", i_);
            return rf_pow(base, std::stoul(std::string(s_.substr(start, i_ - start))));
        }
        return base;
    }

    RatFunc atom() {
        skip_ws();
        if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return rf_const({var_}, Rational(BigInt(std::string(s_.substr(start, i_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            std::string name(s_.substr(start, i_ - start));
            if (name != var_)
                throw ParseError("undeclared variable '" + name + "'", start);
            return {Polynomial::variable({var_}, 0), Polynomial::constant({var_}, 1)};
        }
        if (c == '(') {
            ++i_;
            RatFunc r = expr();
            if (!eat(')')) throw ParseError("expected ')'", i_);
            return r;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }

    std::string_view s_;
    std::string var_;
    std::size_t i_ = 0;
};

}  // namespace

Complex RationalSection::RatFunc::eval(Complex b) const {
    Complex n = num.eval(std::vector<Complex>{b});
    Complex d = den.eval(std::vector<Complex>{b});
    if (std::abs(d) < 1e-250) throw NumericError("section has a pole at the sample point");
    return n / d;
}

RationalSection RationalSection::parse(const std::string& x_expr, const std::string& y_expr,
                                       const std::string& var) {
    RationalSection s;
    s.x_ = RatParser(x_expr, var).run();
    s.y_ = RatParser(y_expr, var).run();
    return s;
}

RationalSection RationalSection::zero_section() {
    RationalSection s;
    s.zero_ = true;
    return s;
}

void RationalSection::verify_on_model(const WeierstrassModel& m) const {
    if (zero_) return;  // the zero section lies on every Weierstrass model
    auto [f_aff, g_aff] = affine_fg(m);
    RatFunc f{f_aff, Polynomial::constant(f_aff.variables(), 1)};
    RatFunc g{g_aff, Polynomial::constant(g_aff.variables(), 1)};
    RatFunc lhs = rf_mul(y_, y_);
    RatFunc rhs = rf_add(rf_add(rf_mul(rf_mul(x_, x_), x_), rf_mul(f, x_)), g);
    RatFunc diff = rf_sub(lhs, rhs);
    if (!diff.num.is_zero())
        throw CheckError("section does not satisfy the Weierstrass equation");
}

std::pair<Polynomial, Polynomial> affine_fg(const WeierstrassModel& m) {
    if (m.base.kind != BaseSpace::P1) throw InputError("affine_fg requires a P^1 base");
    std::vector<std::string> v{m.base.coords[0]};
    Polynomial f(v), g(v);
    for (const auto& [e, c] : m.f.terms()) f.add_term({e[0]}, c);
    for (const auto& [e, c] : m.g.terms()) g.add_term({e[0]}, c);
    return {f, g};
}

std::vector<Complex> discriminant_roots_affine(const WeierstrassModel& m) {
    auto [f, g] = affine_fg(m);
    Polynomial delta = f.pow(3) * Rational(4) + g.pow(2) * Rational(27);
    if (delta.is_zero()) throw CheckError("identically singular model");
    std::vector<Complex> coeffs(delta.total_degree() + 1, Complex(0));
    for (const auto& [e, c] : delta.terms()) coeffs[e[0]] = to_complex(c);
    return polynomial_roots(coeffs);
}

namespace {

double nearest_root_distance(Complex b, const std::vector<Complex>& roots) {
    double d = 1e300;
    for (Complex r : roots) d = std::min(d, std::abs(b - r));
    return d;
}

struct SectionEvaluator {
    const WeierstrassModel& model;
    const RationalSection& section;
    Polynomial f_aff, g_aff;
    std::vector<Complex> delta_roots;

    SectionEvaluator(const WeierstrassModel& m, const RationalSection& s)
        : model(m), section(s) {
        auto [f, g] = affine_fg(m);
        f_aff = f;
        g_aff = g;
        delta_roots = discriminant_roots_affine(m);
        section.verify_on_model(m);
    }

    LatticeData lattice_at(Complex b) const {
        return period_lattice(f_aff.eval(std::vector<Complex>{b}),
                              g_aff.eval(std::vector<Complex>{b}));
    }

    // (f1, f2) at b in the provided (already continued) lattice frame.
    std::pair<double, double> log_at(Complex b, const LatticeData& frame) const {
        if (section.is_zero()) return {0.0, 0.0};
        Complex x = section.x().eval(b);
        Complex y = section.y().eval(b);
        return elliptic_log(x, y, frame);
    }
};

double lift_near(double value, double reference) {
    return value + std::round(reference - value);
}

// (f1, f2) at point, in a basis continued from the center frame, lifted
// near the center values.
std::pair<double, double> lifted_log(const SectionEvaluator& ev, Complex point,
                                     const LatticeData& center_frame,
                                     std::pair<double, double> center_vals) {
    LatticeData matched = match_basis(center_frame, ev.lattice_at(point));
    auto [v1, v2] = ev.log_at(point, matched);
    double l1 = lift_near(v1, center_vals.first);
    double l2 = lift_near(v2, center_vals.second);
    if (std::abs(l1 - center_vals.first) > 0.25 || std::abs(l2 - center_vals.second) > 0.25)
        throw NumericError("branch-tracking failure: adjacent lifts differ by > 0.25");
    return {l1, l2};
}

// Finite-difference covectors (df1, df2) at b with absolute step h.
std::array<std::array<double, 2>, 2> fd_omega(const SectionEvaluator& ev, Complex b, double h,
                                              const LatticeData& frame,
                                              std::pair<double, double> center_vals) {
    std::array<std::array<double, 2>, 2> omega{};
    if (ev.section.is_zero()) return omega;
    const Complex dirs[2] = {Complex(h, 0), Complex(0, h)};
    for (int d = 0; d < 2; ++d) {
        auto plus = lifted_log(ev, b + dirs[d], frame, center_vals);
        auto minus = lifted_log(ev, b - dirs[d], frame, center_vals);
        omega[0][d] = (plus.first - minus.first) / (2 * h);
        omega[1][d] = (plus.second - minus.second) / (2 * h);
    }
    return omega;
}

}  // namespace

std::vector<SectionSample> section_one_form(const WeierstrassModel& m,
                                            const RationalSection& s,
                                            const std::vector<Complex>& points,
                                            double rel_step) {
    SectionEvaluator ev(m, s);
    std::vector<SectionSample> out;
    out.reserve(points.size());
    for (Complex b : points) {
        double dist = nearest_root_distance(b, ev.delta_roots);
        double h = rel_step * dist;
        if (h <= 0 || dist <= h)
            throw InputError("grid point too close to the discriminant");

        SectionSample sample;
        sample.base_point = b;
        if (s.is_zero()) {
            sample.f1 = sample.f2 = 0.0;
            sample.omega = {};
            sample.max_abs_omega = 0.0;
        } else {
            LatticeData frame = ev.lattice_at(b);
            auto center = ev.log_at(b, frame);
            sample.f1 = center.first;
            sample.f2 = center.second;
            sample.omega = fd_omega(ev, b, h, frame, center);
            sample.max_abs_omega = 0.0;
            for (auto& row : sample.omega)
                for (double v : row)
                    sample.max_abs_omega = std::max(sample.max_abs_omega, std::abs(v));
        }
        out.push_back(sample);
    }
    return out;
}

std::pair<double, double> plaquette_residual(const WeierstrassModel& m,
                                             const RationalSection& s, Complex center,
                                             double side) {
    SectionEvaluator ev(m, s);
    if (s.is_zero()) return {0.0, 0.0};
    double dist = nearest_root_distance(center, ev.delta_roots);
    if (dist < 2.0 * side) throw InputError("plaquette too close to the discriminant");

    LatticeData frame = ev.lattice_at(center);
    auto center_vals = ev.log_at(center, frame);
    double h_fd = side / 8.0;

    // Edge midpoints of the square (counterclockwise), each sampled in a
    // basis continued from the center frame.
    const Complex mids[4] = {center + Complex(0, -side / 2), center + Complex(side / 2, 0),
                             center + Complex(0, side / 2), center + Complex(-side / 2, 0)};
    std::array<std::array<std::array<double, 2>, 2>, 4> om;
    for (int k = 0; k < 4; ++k) {
        LatticeData mid_frame = match_basis(frame, ev.lattice_at(mids[k]));
        auto mid_vals = ev.log_at(mids[k], mid_frame);
        mid_vals.first = lift_near(mid_vals.first, center_vals.first);
        mid_vals.second = lift_near(mid_vals.second, center_vals.second);
        om[k] = fd_omega(ev, mids[k], h_fd, mid_frame, mid_vals);
    }
    // Circulation: bottom (+x), right (+y), top (-x), left (-y).
    double r1 = side * (om[0][0][0] + om[1][0][1] - om[2][0][0] - om[3][0][1]);
    double r2 = side * (om[0][1][0] + om[1][1][1] - om[2][1][0] - om[3][1][1]);
    return {std::abs(r1), std::abs(r2)};
}

MonodromyCheck monodromy_transform_check(const WeierstrassModel& m, const RationalSection& s,
                                         Complex center, double radius, int samples) {
    if (samples < 8) throw InputError("monodromy check needs at least 8 samples");
    SectionEvaluator ev(m, s);

    // Contractible loops and multi-root loops are allowed (the latter pick up
    // the product of the individual monodromies); the circle itself must stay
    // clear of the discriminant.
    for (Complex r : ev.delta_roots) {
        if (std::abs(std::abs(r - center) - radius) < 0.02 * radius)
            throw InputError("loop passes too close to a discriminant root");
    }

    auto point = [&](int k) {
        double t = 2.0 * kPi * k / samples;
        return center + radius * Complex(std::cos(t), std::sin(t));
    };

    LatticeData start = ev.lattice_at(point(0));
    auto f_start = ev.log_at(point(0), start);
    LatticeData cur = start;
    auto f_cur = f_start;
    for (int k = 1; k <= samples; ++k) {
        LatticeData next = match_basis(cur, ev.lattice_at(point(k)));
        auto v = ev.log_at(point(k), next);
        double l1 = lift_near(v.first, f_cur.first);
        double l2 = lift_near(v.second, f_cur.second);
        if (std::abs(l1 - f_cur.first) > 0.25 || std::abs(l2 - f_cur.second) > 0.25)
            throw NumericError("branch-tracking failure along the loop; raise samples");
        cur = next;
        f_cur = {l1, l2};
    }

    // Final basis in terms of the initial one: (wb', wa') = [[a,b],[c,d]] (wb, wa).
    auto coords = [&](Complex v) {
        double det = start.omega_b.real() * start.omega_a.imag() -
                     start.omega_b.imag() * start.omega_a.real();
        double p = (v.real() * start.omega_a.imag() - v.imag() * start.omega_a.real()) / det;
        double q = (v.imag() * start.omega_b.real() - v.real() * start.omega_b.imag()) / det;
        return std::pair<double, double>(p, q);
    };
    auto [pa, pb] = coords(cur.omega_b);
    auto [pc, pd] = coords(cur.omega_a);
    if (dist_to_int(pa) > 0.1 || dist_to_int(pb) > 0.1 || dist_to_int(pc) > 0.1 ||
        dist_to_int(pd) > 0.1)
        throw NumericError("monodromy recovery: non-integer basis relation");
    MonodromyCheck out;
    long a = std::lround(pa), b = std::lround(pb), c = std::lround(pc), d = std::lround(pd);
    out.matrix = {{{a, b}, {c, d}}};
    if (a * d - b * c != 1)
        throw CheckError("recovered monodromy matrix is not in SL(2,Z)");

    if (s.is_zero()) {
        out.defect = 0.0;
        return out;
    }
    // f1 = a f1' + c f2', f2 = b f1' + d f2' modulo 1, where the primed
    // values are the continued coordinates after the loop.
    double d1 = f_start.first - (double(a) * f_cur.first + double(c) * f_cur.second);
    double d2 = f_start.second - (double(b) * f_cur.first + double(d) * f_cur.second);
    out.defect = std::max(dist_to_int(d1), dist_to_int(d2));
    return out;
}

}  // namespace elfic

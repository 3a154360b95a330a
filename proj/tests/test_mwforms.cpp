#include "elfic/mwforms.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

using namespace elfic;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WeierstrassModel rank1_model() { return load_model(slurp("models/k3_rank1.json")); }
WeierstrassModel torsion_model() { return load_model(slurp("models/k3_twotorsion.json")); }

std::vector<Complex> box_grid(Complex lo, Complex hi, int side) {
    std::vector<Complex> pts;
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j)
            pts.emplace_back(lo.real() + (hi.real() - lo.real()) * i / (side - 1),
                             lo.imag() + (hi.imag() - lo.imag()) * j / (side - 1));
    return pts;
}

// Signed parabolic class: n with T conjugate to [[1,n],[0,1]] in SL(2,Z).
// Writes (T-1)/content as s * v (Jv)^t for the primitive column vector v;
// the class is -s * content, invariant because S^t J S = J on SL(2,Z).
long parabolic_class(const std::array<std::array<long, 2>, 2>& t) {
    long m[2][2] = {{t[0][0] - 1, t[0][1]}, {t[1][0], t[1][1] - 1}};
    REQUIRE(t[0][0] + t[1][1] == 2);                       // trace 2
    REQUIRE(m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0);   // rank <= 1
    long g = std::abs(std::gcd(std::gcd(m[0][0], m[0][1]), std::gcd(m[1][0], m[1][1])));
    REQUIRE(g != 0);
    for (auto& row : m)
        for (auto& e : row) e /= g;
    long vx = m[0][0], vy = m[1][0];
    if (vx == 0 && vy == 0) vx = m[0][1], vy = m[1][1];
    long gv = std::abs(std::gcd(vx, vy));
    vx /= gv;
    vy /= gv;
    // R = v (Jv)^t with J = [[0,1],[-1,0]]; M/g = s R.
    long r[2][2] = {{vx * vy, -vx * vx}, {vy * vy, -vx * vy}};
    long s = 0;
    for (int i = 0; i < 2 && s == 0; ++i)
        for (int j = 0; j < 2 && s == 0; ++j)
            if (r[i][j] != 0) s = m[i][j] / r[i][j];
    REQUIRE(s != 0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) REQUIRE(m[i][j] == s * r[i][j]);
    return -s * g;
}

}  // namespace

TEST_SUITE_BEGIN("mwforms");

TEST_CASE("root finder") {
    auto r = polynomial_roots({Complex(-6, 0), Complex(11, 0), Complex(-6, 0), Complex(1, 0)});
    REQUIRE(r.size() == 3);  // (z-1)(z-2)(z-3)
    std::vector<double> expected{1, 2, 3};
    for (double e : expected) {
        double best = 1e18;
        for (auto z : r) best = std::min(best, std::abs(z - e));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("period lattice: lemniscatic and equianharmonic") {
    // g = 0, f real negative: square lattice, tau = i.
    LatticeData sq = period_lattice(Complex(-1, 0), Complex(0, 0));
    CHECK(std::abs(sq.tau - Complex(0, 1)) < 1e-9);
    CHECK(std::abs(sq.omega_a - Complex(2.622057554292, 0)) < 1e-9);
    CHECK(sq.tau.imag() > 0);

    // f = 0: hexagonal lattice, tau in the SL(2,Z) orbit of e^{i pi/3}.
    LatticeData hex = period_lattice(Complex(0, 0), Complex(1, 0));
    CHECK(std::abs(std::abs(hex.tau) - 1.0) < 1e-9);
    CHECK(std::abs(std::abs(hex.tau.real()) - 0.5) < 1e-9);
    CHECK(hex.tau.imag() > 0);

    CHECK_THROWS_AS(period_lattice(Complex(-3, 0), Complex(2, 0)), NumericError);  // Delta = 0
}

TEST_CASE("lattice scaling invariance") {
    // (f, g) -> (lambda^4 f, lambda^6 g) rescales the lattice by 1/lambda.
    Complex f(0.7, 0.3), g(-1.1, 0.4);
    double lambda = 1.7;
    LatticeData base = period_lattice(f, g);
    LatticeData scaled = period_lattice(std::pow(lambda, 4) * f, std::pow(lambda, 6) * g);
    LatticeData expect = base;
    expect.omega_a /= lambda;
    expect.omega_b /= lambda;
    expect.f_val = scaled.f_val;
    expect.g_val = scaled.g_val;
    // Same lattice as a set: the integer basis fit succeeds with tiny residual.
    LatticeData matched = match_basis(expect, scaled);
    CHECK(std::abs(matched.omega_a - expect.omega_a) < 1e-12 * std::abs(expect.omega_a));
    CHECK(std::abs(matched.omega_b - expect.omega_b) < 1e-12 * std::abs(expect.omega_b));
}

TEST_CASE("weierstrass p and elliptic log round trip") {
    std::vector<std::pair<Complex, Complex>> curves{
        {Complex(-1, 0), Complex(0.2, 0)},
        {Complex(1.3, 0.4), Complex(-0.2, 0.9)},
        {Complex(0.0, 2.0), Complex(1.0, -1.0)},
    };
    for (auto [f, g] : curves) {
        LatticeData lat = period_lattice(f, g);
        for (auto [a, b] : {std::pair{0.31, 0.17}, std::pair{0.77, 0.45}, std::pair{0.05, 0.91}}) {
            Complex z = a * lat.omega_b + b * lat.omega_a;
            Complex x = weierstrass_p(z, lat);
            Complex y = weierstrass_p_prime(z, lat) * 0.5;
            // The sampled point satisfies the curve equation.
            CHECK(std::abs(y * y - (x * x * x + f * x + g)) < 1e-8);
            auto [f1, f2] = elliptic_log(x, y, lat);
            CHECK(std::abs(f1 - a) < 1e-9);
            CHECK(std::abs(f2 - b) < 1e-9);
        }
        // p' is the derivative of p (finite-difference oracle).
        Complex z0 = 0.23 * lat.omega_b + 0.41 * lat.omega_a;
        double h = 1e-6;
        Complex fd = (weierstrass_p(z0 + h, lat) - weierstrass_p(z0 - h, lat)) / (2 * h);
        CHECK(std::abs(fd - weierstrass_p_prime(z0, lat)) < 1e-5 *
              std::max(1.0, std::abs(weierstrass_p_prime(z0, lat))));
    }
}

TEST_CASE("elliptic log at 2-torsion points") {
    LatticeData lat = period_lattice(Complex(-1, 0), Complex(0, 0));  // roots 1, 0, -1
    std::vector<std::pair<double, double>> seen;
    for (double root : {1.0, 0.0, -1.0}) {
        auto [f1, f2] = elliptic_log(Complex(root, 0), Complex(0, 0), lat);
        CHECK(std::abs(f1 - (f1 > 0.25 ? 0.5 : 0.0)) < 1e-9);
        CHECK(std::abs(f2 - (f2 > 0.25 ? 0.5 : 0.0)) < 1e-9);
        CHECK(f1 + f2 > 0.25);  // never the origin
        seen.emplace_back(std::round(f1 * 2) / 2, std::round(f2 * 2) / 2);
    }
    std::sort(seen.begin(), seen.end());
    CHECK(std::unique(seen.begin(), seen.end()) == seen.end());  // three distinct halves

    CHECK_THROWS_AS(elliptic_log(Complex(5, 5), Complex(0, 0), lat), NumericError);
}

TEST_CASE("section validation") {
    WeierstrassModel m = rank1_model();
    RationalSection good = RationalSection::parse("s^2", "s^3 + 1", "s");
    good.verify_on_model(m);  // exact identity

    RationalSection bad = RationalSection::parse("s^2", "s^3", "s");
    CHECK_THROWS_AS(bad.verify_on_model(m), CheckError);

    CHECK_THROWS_AS(RationalSection::parse("b^2", "b^3", "s"), ParseError);  // wrong variable
    RationalSection::parse("(s^2 + 1)/(s - 2)", "s/(s - 2)", "s");  // rational functions parse
    CHECK_THROWS_AS(RationalSection::parse("1/(s - s)", "0", "s"), InputError);
}

TEST_CASE("zero and torsion sections have vanishing one-forms") {
    WeierstrassModel tor = torsion_model();
    auto grid = box_grid({0.05, 0.05}, {0.6, 0.6}, 4);

    auto zero = section_one_form(tor, RationalSection::zero_section(), grid);
    for (const auto& s : zero) CHECK(s.max_abs_omega == 0.0);

    RationalSection two_torsion = RationalSection::parse("s^4 + 1", "0", "s");
    auto samples = section_one_form(tor, two_torsion, grid);
    for (const auto& s : samples) {
        CHECK(s.max_abs_omega < 1e-8);
        CHECK(std::abs(s.f1 - (s.f1 > 0.25 ? 0.5 : 0.0)) < 1e-9);
        CHECK(std::abs(s.f2 - (s.f2 > 0.25 ? 0.5 : 0.0)) < 1e-9);
    }
}

TEST_CASE("non-torsion sections have somewhere-nonzero one-forms") {
    WeierstrassModel m = rank1_model();
    RationalSection s = RationalSection::parse("s^2", "s^3 + 1", "s");
    auto samples = section_one_form(m, s, box_grid({0.1, 0.1}, {0.5, 0.5}, 3));
    double max_omega = 0;
    for (const auto& sample : samples) max_omega = std::max(max_omega, sample.max_abs_omega);
    CHECK(max_omega > 1e-3);
}

TEST_CASE("monodromy transport") {
    WeierstrassModel m = rank1_model();
    RationalSection s = RationalSection::parse("s^2", "s^3 + 1", "s");
    auto roots = discriminant_roots_affine(m);
    REQUIRE(roots.size() == 24);

    // Contractible loop: identity, tiny defect.
    auto id = monodromy_transform_check(m, s, Complex(0.25, 0.25), 0.08, 32);
    CHECK(id.matrix[0][0] == 1);
    CHECK(id.matrix[0][1] == 0);
    CHECK(id.matrix[1][0] == 0);
    CHECK(id.matrix[1][1] == 1);
    CHECK(id.defect < 1e-9);

    // Loop around one I1 root: conjugate to [[1,1],[0,1]].
    std::size_t best = 0;
    double iso = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        double d = 1e18;
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (j != i) d = std::min(d, std::abs(roots[i] - roots[j]));
        if (d > iso) {
            iso = d;
            best = i;
        }
    }
    auto i1 = monodromy_transform_check(m, s, roots[best], 0.4 * iso, 64);
    CHECK(i1.matrix[0][0] + i1.matrix[1][1] == 2);  // parabolic
    CHECK(parabolic_class(i1.matrix) == 1);         // class of [[1,1],[0,1]]
    CHECK(i1.defect < 1e-6);

    // Defect does not grow under refinement.
    auto coarse = monodromy_transform_check(m, s, roots[best], 0.4 * iso, 32);
    auto fine = monodromy_transform_check(m, s, roots[best], 0.4 * iso, 128);
    CHECK(fine.defect <= coarse.defect + 1e-12);

    // Too few samples for this loop is a rejected continuation, not silence.
    CHECK_THROWS_AS(monodromy_transform_check(m, s, roots[best], 0.4 * iso, 8),
                    NumericError);
}

TEST_CASE("loop around two roots composes the individual monodromies") {
    WeierstrassModel m = rank1_model();
    RationalSection s = RationalSection::parse("s^2", "s^3 + 1", "s");
    auto roots = discriminant_roots_affine(m);

    // Find the closest pair of roots, well separated from the rest.
    std::size_t p = 0, q = 1;
    double dmin = 1e18;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) < dmin) {
                dmin = std::abs(roots[i] - roots[j]);
                p = i;
                q = j;
            }
    Complex mid = 0.5 * (roots[p] + roots[q]);
    double other = 1e18;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (i != p && i != q) other = std::min(other, std::abs(roots[i] - mid));
    double rbig = 0.5 * (dmin / 2 + other);
    if (rbig > 1.4 * (dmin / 2) && rbig < other) {
        auto big = monodromy_transform_check(m, s, mid, rbig, 128);
        auto one = monodromy_transform_check(m, s, roots[p], 0.3 * dmin, 64);
        auto two = monodromy_transform_check(m, s, roots[q], 0.3 * dmin, 64);
        // Trace is conjugation invariant and tr(T1 T2) = tr(T2 T1).
        long t11 = one.matrix[0][0] * two.matrix[0][0] + one.matrix[0][1] * two.matrix[1][0];
        long t22 = one.matrix[1][0] * two.matrix[0][1] + one.matrix[1][1] * two.matrix[1][1];
        long tr_big = big.matrix[0][0] + big.matrix[1][1];
        CHECK(tr_big == t11 + t22);
        CHECK(big.defect < 1e-6);
    }
}

TEST_CASE("plaquette closedness converges at second order or better") {
    WeierstrassModel m = rank1_model();
    RationalSection s = RationalSection::parse("s^2", "s^3 + 1", "s");
    Complex center(0.22, 0.18);
    auto [c1, c2] = plaquette_residual(m, s, center, 0.04);
    auto [h1, h2] = plaquette_residual(m, s, center, 0.02);
    double coarse = std::max(c1, c2), fine = std::max(h1, h2);
    CHECK(fine > 0);
    CHECK(coarse / fine >= 3.5);
}

TEST_SUITE_END();

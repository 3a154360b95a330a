#pragma once

// Numerical Mordell-Weil 1-forms over a P^1 base: period lattices by complex
// AGM, elliptic logarithms, the doublet (omega_1, omega_2) = (df_1, df_2) of a
// rational section, and monodromy transport around discriminant points.
// This is the only module that uses floating point.

#include "elfic/polynomial.hpp"
#include "elfic/weierstrass.hpp"

#include <array>
#include <complex>
#include <vector>

namespace elfic {

using Complex = std::complex<double>;

// Numeric failure (AGM non-convergence, branch-tracking slip, loop too close
// to the discriminant).
struct NumericError : Error {
    using Error::Error;
};

struct LatticeData {
    Complex omega_a, omega_b;  // basis; z = f1*omega_b + f2*omega_a mod lattice
    Complex tau;               // omega_b / omega_a, Im(tau) > 0
    bool swapped = false;      // basis was reoriented to enforce Im(tau) > 0
    Complex f_val, g_val;      // the curve y^2 = x^3 + f x + g it belongs to
};

// Periods of y^2 = x^3 + f x + g by AGM on the cubic roots.  The returned
// basis is verified against the curve through the Eisenstein series
// (g2, g3) = (-4f, -4g); throws NumericError when no root labeling passes.
LatticeData period_lattice(Complex f_val, Complex g_val);

// Weierstrass p-function and derivative for the lattice (q-series after
// reduction to the fundamental domain).  y = pprime/2 on our curve.
Complex weierstrass_p(Complex z, const LatticeData& lat);
Complex weierstrass_p_prime(Complex z, const LatticeData& lat);

// z with p(z) = x, p'(z)/2 = y, decomposed as z = f1*omega_b + f2*omega_a,
// f_i in [0,1).  Round trip to 1e-9 or NumericError.
std::pair<double, double> elliptic_log(Complex x, Complex y, const LatticeData& lat);

// Recombine fresh's basis integrally so it continues frame's basis; the two
// lattices must agree (nearby base points).  Throws NumericError when the
// integer fit is poor (continuation step rejected).
LatticeData match_basis(const LatticeData& frame, const LatticeData& fresh);

// A rational section b -> (x(b), y(b)) of a Weierstrass model over P^1,
// given by rational functions of the affine coordinate, or the zero section.
class RationalSection {
  public:
    struct RatFunc {
        Polynomial num, den;  // univariate, den != 0, gcd-reduced
        Complex eval(Complex b) const;
    };

    static RationalSection parse(const std::string& x_expr, const std::string& y_expr,
                                 const std::string& var);
    static RationalSection zero_section();

    bool is_zero() const { return zero_; }
    const RatFunc& x() const { return x_; }
    const RatFunc& y() const { return y_; }

    // Exact check that y^2 = x^3 + f_aff x + g_aff holds identically.
    void verify_on_model(const WeierstrassModel& m) const;

  private:
    bool zero_ = false;
    RatFunc x_, y_;
};

// Affine restrictions f(b, 1), g(b, 1) of a P^1 model, univariate in the
// first coordinate.
std::pair<Polynomial, Polynomial> affine_fg(const WeierstrassModel& m);

// Roots of the affine discriminant (Durand-Kerner with Newton polish).
std::vector<Complex> discriminant_roots_affine(const WeierstrassModel& m);

struct SectionSample {
    Complex base_point;
    double f1, f2;
    // omega[i] = (d f_{i+1} / d Re b, d f_{i+1} / d Im b)
    std::array<std::array<double, 2>, 2> omega;
    double max_abs_omega;
};

// Finite-difference doublet 1-form on the given base points.  The step at
// each point is rel_step times the distance to the nearest discriminant
// root.  Branch continuity is enforced by nearest-representative lifting.
std::vector<SectionSample> section_one_form(const WeierstrassModel& m,
                                            const RationalSection& s,
                                            const std::vector<Complex>& points,
                                            double rel_step = 1e-4);

// Midpoint-rule circulation of the sampled omega around the square of the
// given side centered at center; returns (residual for f1, residual for f2).
std::pair<double, double> plaquette_residual(const WeierstrassModel& m,
                                             const RationalSection& s, Complex center,
                                             double side);

struct MonodromyCheck {
    std::array<std::array<long, 2>, 2> matrix;  // tau' = (a tau + b)/(c tau + d)
    double defect;                              // transformation-law defect
};

// Continue the lattice and the section logarithm around a circle enclosing
// exactly one discriminant root; recover the integer monodromy matrix and
// the defect of the doublet transformation law.
MonodromyCheck monodromy_transform_check(const WeierstrassModel& m, const RationalSection& s,
                                         Complex center, double radius, int samples);

// Roots of a monic-normalized complex polynomial (ascending coefficients).
std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs);

}  // namespace elfic

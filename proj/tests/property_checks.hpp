#pragma once

// Randomized property suites shared by the unit tests (small case counts)
// and the acceptance runner (full counts).  All checks are exact.

#include "elfic/decomp.hpp"
#include "elfic/iclocal.hpp"
#include "elfic/localsys.hpp"
#include "elfic/polynomial.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace elfic_tests {

struct PropertyResult {
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    void fail(const std::string& what) {
        ++failures;
        if (first_failure.empty()) first_failure = what;
    }
    bool ok() const { return failures == 0 && cases > 0; }
};

using Rng = std::mt19937_64;

// Random commuting nilpotent tuples (polynomials in one strictly upper
// triangular matrix, plus block-diagonal combinations).
elfic::NilpotentTuple random_commuting_tuple(Rng& rng, int arity);

// d^2 = 0 and the Euler-characteristic identity on random B-complexes.
PropertyResult prop_bcomplex_invariants(int cases, std::uint64_t seed);

// Two-term reduction agrees with the full complex in degrees 0 and 1 (n = 2)
// and H^2 vanishes whenever psi surjects.
PropertyResult prop_two_term_agreement(int cases, std::uint64_t seed);

// bulk + sum(branes) = h1 of the open curve for random representations in
// the vanishing regime.
PropertyResult prop_bulk_brane(int cases, std::uint64_t seed);

// vanishing_order(p * d^k, d) = vanishing_order(p, d) + k.
PropertyResult prop_vanishing_order_additivity(int cases, std::uint64_t seed);

// Ring axioms on random small polynomials.
PropertyResult prop_ring_axioms(int cases, std::uint64_t seed);

// STW and anomaly checks flag exactly the perturbed models.
PropertyResult prop_stw_anomaly_controls(int cases, std::uint64_t seed);

// Randomized I2-along-a-line family: Delta divisible by l^2 and not l^3,
// with the expansion coefficient matching the closed form.
PropertyResult prop_i2_family(int cases, std::uint64_t seed);

}  // namespace elfic_tests

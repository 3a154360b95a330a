#pragma once

// Cohomology of a local system on P^1 minus k points, given by its monodromy
// representation: joint invariants, H^1 of the open curve, pushforward
// cohomology (h0, h1, h2) of j_* V, local R^1 j_* stalks, and the
// bulk/brane splitting of H^1(U, V).

#include "elfic/qmatrix.hpp"

#include <optional>
#include <vector>

namespace elfic {

class MonodromyRep {
  public:
    // Ordered loops composed left to right; validates T_k ... T_2 T_1 = 1 and
    // invertibility of every T_i.
    explicit MonodromyRep(std::vector<QMatrix> matrices, std::size_t genus = 0);

    std::size_t rank() const { return rank_; }
    std::size_t punctures() const { return t_.size(); }
    std::size_t genus() const { return genus_; }
    const QMatrix& matrix(std::size_t i) const { return t_[i]; }

    // The dual local system, matrices transpose-inverse.
    MonodromyRep dual() const;

  private:
    std::size_t rank_;
    std::size_t genus_;
    std::vector<QMatrix> t_;
};

struct PushforwardCohomology {
    int h0, h1, h2;
};

struct SupportSplit {
    int bulk_dim;                 // dim H^1(P^1, j_* V)
    std::vector<int> brane_dims;  // per-puncture stalk of R^1 j_* V
    int total_dim;                // dim H^1(U, V)
    bool exact;                   // three-term sequence regime (h0 = h2 = 0)
};

// dim of the joint fixed space {v : T_i v = v for all i}.
int invariants_dim(const MonodromyRep& rep);

// dim H^1(U, V) for U = P^1 minus k >= 1 points (H^2 of an open curve
// vanishes, so chi = h0 - h1).
int h1_open(const MonodromyRep& rep);

// dim coker(T - 1) = rank - rank(T - 1), the stalk of R^1 j_* V.
int local_boundary_dim(const QMatrix& T);

// (h0, h1, h2) of (P^1, j_* V), via
//   chi = rank*(2-k) + sum_i dim ker(T_i - 1),  h2 = invariants of the dual.
PushforwardCohomology pushforward_cohomology(const MonodromyRep& rep);

// Bulk/brane decomposition of H^1(U, V).  In the vanishing regime
// (h0 = h2 = 0) verifies bulk + sum(branes) = total; otherwise reports the
// ranks with exact = false.
SupportSplit bulk_brane_split(const MonodromyRep& rep);

}  // namespace elfic

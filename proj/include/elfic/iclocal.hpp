#pragma once

// Local intersection-cohomology stalk data: the complex
//
//   B^p(N_1,...,N_n; V) = (+)_{j_1<...<j_p} N_{j_1}...N_{j_p} V
//
// built from commuting nilpotent monodromy logarithms, with differential
// acting on the summand omitting j_s by (-1)^(s-1) N_{j_s}.  Its cohomology
// gives the stalk of IC(V) at a normal crossing of the discriminant.

#include "elfic/qmatrix.hpp"

#include <string>
#include <vector>

namespace elfic {

class NilpotentTuple {
  public:
    // Validates eagerly: every N_i nilpotent, all pairs commuting.
    NilpotentTuple(std::size_t dim_v, std::vector<QMatrix> matrices);

    std::size_t dim_v() const { return dim_; }
    std::size_t count() const { return n_.size(); }
    const QMatrix& matrix(std::size_t i) const { return n_[i]; }

    // dim of the joint kernel of all N_i (the monodromy invariants).
    int common_kernel_dim() const;

  private:
    std::size_t dim_;
    std::vector<QMatrix> n_;
};

struct ChainComplex {
    // One entry per degree p = 0..n: the chosen basis of B^p as column
    // vectors in V-coordinates per subset summand, flattened.
    std::vector<int> space_dims;
    // Labels of the subset summands per degree, e.g. {"", "1", "2", "12"}.
    std::vector<std::vector<std::string>> summand_labels;
    // differentials[p]: B^p -> B^(p+1), size dims[p+1] x dims[p].
    std::vector<QMatrix> differentials;

    bool d_squared_zero() const;
};

struct TwoTermReduction {
    int dim_source;      // dim V
    int dim_ker_psi;     // dim ker(psi) inside N1 V + N2 V
    bool psi_surjective; // onto N1 N2 V
    int h0;
    int h1;
};

ChainComplex build_b_complex(const NilpotentTuple& t);

// dim H^p for each degree; requires d^2 = 0.
std::vector<int> complex_cohomology(const ChainComplex& c);

// Cohomology dimensions of the B-complex (the IC stalk dimensions).
std::vector<int> ic_stalk_dims(const NilpotentTuple& t);

// n = 2 only: the quasi-isomorphic two-term complex V -> ker psi with
// psi = (N2, -N1).  Throws CheckError when psi fails to surject onto N1 N2 V.
TwoTermReduction two_term_reduction(const NilpotentTuple& t);

// Matrix-list text format: rows of whitespace-separated rationals, matrices
// separated by blank lines, '#' starts a comment line.
std::vector<QMatrix> parse_matrix_list(const std::string& text);

}  // namespace elfic

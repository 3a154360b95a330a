#pragma once

// Dense exact linear algebra over Q: rank, kernels, column spaces, solving.
// Pivots are always the leftmost nonzero entry so reduced bases are
// reproducible across runs.

#include "elfic/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace elfic {

class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}
    QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    static QMatrix identity(std::size_t n);
    // Row-major initializer, e.g. QMatrix::from_rows({{1,2},{3,4}}).
    static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    QMatrix operator+(const QMatrix& rhs) const;
    QMatrix operator-(const QMatrix& rhs) const;
    QMatrix operator*(const QMatrix& rhs) const;
    QMatrix operator*(const Rational& c) const;
    bool operator==(const QMatrix& rhs) const = default;

    QMatrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;

    std::size_t rank() const;
    // Basis of {x : Ax = 0} as matrix columns; deterministic.
    QMatrix kernel_basis() const;
    // The leftmost maximal independent subset of columns, as a matrix.
    QMatrix column_space_basis() const;
    std::vector<std::size_t> pivot_columns() const;

    // One solution of Ax = b (b as column matrix), or nullopt if inconsistent.
    std::optional<QMatrix> solve(const QMatrix& b) const;
    std::optional<QMatrix> inverse() const;
    Rational det() const;  // square only

    // Columns [b.cols) appended on the right.
    QMatrix hstack(const QMatrix& b) const;
    QMatrix vstack(const QMatrix& b) const;

    std::string str() const;

  private:
    // Row echelon reduction in place; returns pivot (row,col) list.
    std::vector<std::pair<std::size_t, std::size_t>> rref_in_place();

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

}  // namespace elfic

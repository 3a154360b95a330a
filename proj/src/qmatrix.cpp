#include "elfic/qmatrix.hpp"

#include <sstream>

namespace elfic {

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) throw InputError("matrix entry count mismatch");
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw InputError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QMatrix QMatrix::operator+(const QMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("matrix shape mismatch");
    QMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += rhs.a_[i];
    return m;
}

QMatrix QMatrix::operator-(const QMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("matrix shape mismatch");
    QMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= rhs.a_[i];
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InputError("matrix shape mismatch in product");
    QMatrix m(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) m.at(i, j) += aik * rhs.at(k, j);
        }
    return m;
}

QMatrix QMatrix::operator*(const Rational& c) const {
    QMatrix m = *this;
    for (auto& x : m.a_) x *= c;
    return m;
}

QMatrix QMatrix::transpose() const {
    QMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

bool QMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

bool QMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(rows_);
}

std::vector<std::pair<std::size_t, std::size_t>> QMatrix::rref_in_place() {
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t sel = row;
        while (sel < rows_ && at(sel, col) == 0) ++sel;
        if (sel == rows_) continue;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(row, j), at(sel, j));
        Rational inv = Rational(1) / at(row, col);
        for (std::size_t j = col; j < cols_; ++j) at(row, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || at(i, col) == 0) continue;
            Rational f = at(i, col);
            for (std::size_t j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
        }
        pivots.emplace_back(row, col);
        ++row;
    }
    return pivots;
}

std::size_t QMatrix::rank() const {
    QMatrix m = *this;
    return m.rref_in_place().size();
}

std::vector<std::size_t> QMatrix::pivot_columns() const {
    QMatrix m = *this;
    auto pivots = m.rref_in_place();
    std::vector<std::size_t> cols;
    cols.reserve(pivots.size());
    for (auto& [r, c] : pivots) cols.push_back(c);
    return cols;
}

QMatrix QMatrix::kernel_basis() const {
    QMatrix m = *this;
    auto pivots = m.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (auto& [r, c] : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    QMatrix k(cols_, free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        std::size_t fc = free_cols[f];
        k.at(fc, f) = 1;
        for (auto& [r, c] : pivots) k.at(c, f) = -m.at(r, fc);
    }
    return k;
}

QMatrix QMatrix::column_space_basis() const {
    auto piv = pivot_columns();
    QMatrix b(rows_, piv.size());
    for (std::size_t j = 0; j < piv.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i) b.at(i, j) = at(i, piv[j]);
    return b;
}

std::optional<QMatrix> QMatrix::solve(const QMatrix& b) const {
    if (b.rows_ != rows_) throw InputError("solve: rhs row count mismatch");
    QMatrix aug = hstack(b);
    auto pivots = aug.rref_in_place();
    // Inconsistent iff a pivot lands in the appended block.
    for (auto& [r, c] : pivots)
        if (c >= cols_) return std::nullopt;
    QMatrix x(cols_, b.cols_);
    for (auto& [r, c] : pivots)
        for (std::size_t j = 0; j < b.cols_; ++j) x.at(c, j) = aug.at(r, cols_ + j);
    return x;
}

std::optional<QMatrix> QMatrix::inverse() const {
    if (rows_ != cols_) throw InputError("inverse of a non-square matrix");
    QMatrix aug = hstack(identity(rows_));
    auto pivots = aug.rref_in_place();
    if (pivots.size() != rows_) return std::nullopt;
    for (auto& [r, c] : pivots)
        if (c >= cols_) return std::nullopt;
    QMatrix inv(rows_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rows_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
}

Rational QMatrix::det() const {
    if (rows_ != cols_) throw InputError("determinant of a non-square matrix");
    QMatrix m = *this;
    Rational d = 1;
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t sel = col;
        while (sel < rows_ && m.at(sel, col) == 0) ++sel;
        if (sel == rows_) return 0;
        if (sel != col) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(col, j), m.at(sel, j));
            d = -d;
        }
        d *= m.at(col, col);
        Rational inv = Rational(1) / m.at(col, col);
        for (std::size_t i = col + 1; i < rows_; ++i) {
            if (m.at(i, col) == 0) continue;
            Rational f = m.at(i, col) * inv;
            for (std::size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

QMatrix QMatrix::hstack(const QMatrix& b) const {
    if (b.rows_ != rows_) throw InputError("hstack row count mismatch");
    QMatrix m(rows_, cols_ + b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) m.at(i, cols_ + j) = b.at(i, j);
    }
    return m;
}

QMatrix QMatrix::vstack(const QMatrix& b) const {
    if (b.cols_ != cols_) throw InputError("vstack column count mismatch");
    QMatrix m(rows_ + b.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(rows_ + i, j) = b.at(i, j);
    return m;
}

std::string QMatrix::str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_; ++i) {
        out << "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out << " ";
            out << to_string(at(i, j));
        }
        out << "]";
        if (i + 1 < rows_) out << "\n";
    }
    return out.str();
}

}  // namespace elfic

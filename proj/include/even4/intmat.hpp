#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "even4/integers.hpp"

namespace even4 {

/// Dense rectangular matrix over the integers, row-major, exact arithmetic.
class IntMatrix {
public:
    IntMatrix() = default;

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw std::invalid_argument("IntMatrix: ragged initializer");
            for (long long v : row) entries_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool is_square() const { return rows_ == cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    Int& at(std::size_t i, std::size_t j) {
        check_index(i, j);
        return (*this)(i, j);
    }
    const Int& at(std::size_t i, std::size_t j) const {
        check_index(i, j);
        return (*this)(i, j);
    }

    bool operator==(const IntMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
    }
    bool operator!=(const IntMatrix& other) const { return !(*this == other); }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_zero() const {
        for (const Int& e : entries_)
            if (e != 0) return false;
        return true;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix negated() const {
        IntMatrix n(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) n.entries_[i] = -entries_[i];
        return n;
    }

    // Elementary operations used by the normal-form routines; all unimodular.
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += q * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += q * (*this)(src, j);
    }
    /// col[dst] += q * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += q * (*this)(i, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i == 0 ? "[" : " ");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "[") << m(i, j);
            os << "]" << (i + 1 == m.rows_ ? "]" : "\n");
        }
        if (m.rows_ == 0) os << "[]";
        return os;
    }

private:
    void check_index(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMatrix: index out of range");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> entries_;
};

/// Block-diagonal sum; either operand may be empty.
inline IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
    return c;
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
inline Int det(const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("det: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t pivot = k;
            while (pivot < n && a(pivot, k) == 0) ++pivot;
            if (pivot == n) return 0;
            a.swap_rows(k, pivot);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

}  // namespace even4

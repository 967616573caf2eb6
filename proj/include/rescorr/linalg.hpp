#pragma once

/**
 * @file linalg.hpp
 * @brief Dense matrices and exact Gauss-Jordan elimination.
 *
 * Everything here is templated on the entry type but only ever instantiated
 * with an exact field (GaussianRational), so there is no pivoting strategy
 * beyond "first nonzero entry in the column".
 */

#include "exactnum.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace rescorr {

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) : rows_(init.size()) {
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<T> column(std::size_t c) const {
        std::vector<T> out;
        out.reserve(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
        return out;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!(v == T{})) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    Matrix select_columns(std::span<const std::size_t> cols) const {
        Matrix out(rows_, cols.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols.size(); ++k) out(r, k) = (*this)(r, cols[k]);
        return out;
    }

    Matrix select_rows(std::size_t first, std::size_t count) const {
        Matrix out(count, cols_);
        for (std::size_t r = 0; r < count; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(first + r, c);
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: nonconformable product");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& lhs = a(r, k);
                if (lhs == T{}) continue;
                for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += lhs * b(k, c);
            }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ExactMatrix = Matrix<GaussianRational>;

inline ExactMatrix conj_transpose(const ExactMatrix& m) {
    ExactMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = conj(m(r, c));
    return out;
}

template <typename T>
struct RrefResult {
    Matrix<T> reduced;
    std::vector<std::size_t> pivot_cols; // ascending
};

/// Reduced row echelon form. Pivot: first nonzero entry at or below the
/// current row, scanning the column top to bottom.
template <typename T>
RrefResult<T> rref(Matrix<T> m) {
    std::vector<std::size_t> pivots;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
        std::size_t p = lead_row;
        while (p < m.rows() && m(p, c) == T{}) ++p;
        if (p == m.rows()) continue;
        if (p != lead_row)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));

        const T inv = T(1) / m(lead_row, c);
        for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;

        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead_row || m(r, c) == T{}) continue;
            const T factor = m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= factor * m(lead_row, k);
        }
        pivots.push_back(c);
        ++lead_row;
    }
    return {std::move(m), std::move(pivots)};
}

template <typename T>
std::size_t rank(const Matrix<T>& m) {
    return rref(m).pivot_cols.size();
}

/// M = left * right with left (r x rho) and right (rho x c), both of rank rho.
template <typename T>
struct FullRankFactors {
    Matrix<T> left;
    Matrix<T> right;
};

/**
 * Full-rank factorization with the pivot-column convention: `left` holds the
 * pivot columns of M in order and `right` is the nonzero rows of rref(M).
 * Throws std::invalid_argument on the zero matrix.
 */
template <typename T>
FullRankFactors<T> full_rank_factorize(const Matrix<T>& m) {
    auto [reduced, pivots] = rref(m);
    if (pivots.empty()) throw std::invalid_argument("full_rank_factorize: zero matrix");
    return {m.select_columns(pivots), reduced.select_rows(0, pivots.size())};
}

/**
 * Full-rank factorization on a caller-chosen column basis. `basis` must index
 * rank(M) linearly independent columns; `right` holds the coordinates of every
 * column of M in that basis.
 */
template <typename T>
FullRankFactors<T> full_rank_factorize(const Matrix<T>& m, std::span<const std::size_t> basis) {
    if (m.is_zero()) throw std::invalid_argument("full_rank_factorize: zero matrix");
    Matrix<T> left = m.select_columns(basis);
    // rref([left | M]): the first |basis| rows carry the coordinates.
    Matrix<T> aug(m.rows(), basis.size() + m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t k = 0; k < basis.size(); ++k) aug(r, k) = left(r, k);
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, basis.size() + c) = m(r, c);
    }
    auto [reduced, pivots] = rref(std::move(aug));
    const std::size_t rho = basis.size();
    if (pivots.size() != rho)
        throw std::invalid_argument("full_rank_factorize: columns are not a basis of the column space");
    for (std::size_t k = 0; k < rho; ++k)
        if (pivots[k] != k)
            throw std::invalid_argument("full_rank_factorize: basis columns are dependent");
    Matrix<T> right(rho, m.cols());
    for (std::size_t r = 0; r < rho; ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) right(r, c) = reduced(r, rho + c);
    return {std::move(left), std::move(right)};
}

} // namespace rescorr

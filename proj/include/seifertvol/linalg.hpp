#pragma once

#include "seifertvol/rational.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace seifertvol {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using RealMatrix = Matrix<double>;
using RationalVector = std::vector<Rational>;
using RealVector = std::vector<double>;

// Zero tests and pivot preferences for the two scalar fields in use.
template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static bool is_zero(const Rational& x, double) { return x.is_zero(); }
    static double magnitude(const Rational& x) { return std::fabs(x.to_double()); }
    static constexpr bool exact = true;
};

template <>
struct FieldTraits<double> {
    static bool is_zero(double x, double tol) { return std::fabs(x) <= tol; }
    static double magnitude(double x) { return std::fabs(x); }
    static constexpr bool exact = false;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix<T> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (FieldTraits<T>::is_zero(a(i, k), 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<T> r(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * x[j];
    return r;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) -= b(i, j);
    return r;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
    return r;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
    Matrix<T> r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

template <class T>
T dot(const std::vector<T>& x, const std::vector<T>& y) {
    T s(0);
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

// Quadratic form x^T A x.
template <class T>
T quadratic_form(const Matrix<T>& a, const std::vector<T>& x) {
    return dot(x, a * x);
}

// In-place reduced row echelon form over the first `pivot_cols` columns
// (all columns by default). Returns the pivot column of each pivot row.
// For doubles, partial pivoting with absolute threshold `tol`.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m, double tol = 0.0, std::size_t pivot_cols = static_cast<std::size_t>(-1)) {
    using F = FieldTraits<T>;
    const std::size_t nc = std::min(pivot_cols, m.cols());
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < m.rows(); ++col) {
        std::size_t best = m.rows();
        double best_mag = 0.0;
        for (std::size_t i = row; i < m.rows(); ++i) {
            if (F::is_zero(m(i, col), tol)) continue;
            if constexpr (F::exact) {
                best = i;
                break;
            } else {
                double mag = F::magnitude(m(i, col));
                if (mag > best_mag) {
                    best_mag = mag;
                    best = i;
                }
            }
        }
        if (best == m.rows()) continue;
        if (best != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
        T inv = T(1) / m(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || F::is_zero(m(i, col), 0.0)) continue;
            T f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m, double tol = 0.0) {
    return rref(m, tol).size();
}

// Basis of {x : A x = 0}; one vector per free column, free entry = 1.
template <class T>
std::vector<std::vector<T>> kernel_basis(Matrix<T> m, double tol = 0.0) {
    auto pivots = rref(m, tol);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(m.cols(), T(0));
        v[free] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a, double tol = 0.0) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    auto pivots = rref(aug, tol, n);
    if (pivots.size() != n) throw std::domain_error("matrix is singular");
    Matrix<T> r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

// Moore-Penrose pseudo-inverse of a symmetric matrix, exact over Q:
// (A + P_K)^{-1} - P_K with P_K the orthogonal projector onto ker A.
RationalMatrix symmetric_pseudo_inverse(const RationalMatrix& a);

}  // namespace seifertvol

#ifndef FFH_LINALG_HPP
#define FFH_LINALG_HPP

// Small dense exact linear algebra: fraction-free determinants over Z and
// Gauss-Jordan elimination over a field (Q or Q(t)).

#include "ffh/arith.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ffh {

template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    F& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        Matrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (is_zero(x(i, k))) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F> a_;
};

/// Bareiss fraction-free determinant of a square integer matrix.
inline Integer bareiss_det(Matrix<Integer> m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m(k, k))) {
            std::size_t p = k + 1;
            while (p < n && is_zero(m(p, k))) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? Integer(m(n - 1, n - 1)) : Integer(-m(n - 1, n - 1));
}

/// Determinant over a field by Gaussian elimination.
template <class F>
F determinant(Matrix<F> m) {
    const std::size_t n = m.rows();
    F det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && is_zero(m(p, k))) ++p;
        if (p == n) return F();
        if (p != k) {
            m.swap_rows(k, p);
            det = -det;
        }
        det = det * m(k, k);
        const F inv = F(1) / m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (is_zero(m(i, k))) continue;
            const F f = m(i, k) * inv;
            for (std::size_t j = k; j < n; ++j) m(i, j) = m(i, j) - f * m(k, j);
        }
    }
    return det;
}

/// Reduced row echelon form in place; returns the pivot column of each pivot row.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m, std::size_t ncols_to_reduce) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols_to_reduce && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && is_zero(m(p, col))) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(row, p);
        const F inv = F(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j)
            if (!is_zero(m(row, j))) m(row, j) = m(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m(i, col))) continue;
            const F f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (!is_zero(m(row, j))) m(i, j) = m(i, j) - f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
std::size_t rank(Matrix<F> m) {
    return rref(m, m.cols()).size();
}

/// A particular solution X of A X = B (free variables set to zero), or
/// nullopt when the system is inconsistent.
template <class F>
std::optional<Matrix<F>> solve_particular(const Matrix<F>& a, const Matrix<F>& b) {
    const std::size_t n = a.cols(), nrhs = b.cols();
    Matrix<F> aug(a.rows(), n + nrhs);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < nrhs; ++j) aug(i, n + j) = b(i, j);
    }
    auto pivots = rref(aug, n);
    for (std::size_t i = pivots.size(); i < aug.rows(); ++i)
        for (std::size_t j = 0; j < nrhs; ++j)
            if (!is_zero(aug(i, n + j))) return std::nullopt;
    Matrix<F> x(n, nrhs);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t j = 0; j < nrhs; ++j) x(pivots[r], j) = aug(r, n + j);
    return x;
}

/// Inverse of a square matrix over a field, or nullopt when singular.
template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
    Matrix<F> id(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) id(i, i) = F(1);
    if (rank(a) != a.rows()) return std::nullopt;
    return solve_particular(a, id);
}

}  // namespace ffh

#endif  // FFH_LINALG_HPP

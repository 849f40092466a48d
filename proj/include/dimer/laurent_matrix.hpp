#pragma once

#include <vector>

#include "dimer/laurent.hpp"

namespace dimer {

// Dense square matrix of Laurent polynomials, used for the Kasteleyn matrix
// and its minors.
template <typename S>
class LaurentMatrix {
public:
    LaurentMatrix() = default;
    LaurentMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    LaurentPoly<S>& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const LaurentPoly<S>& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    LaurentMatrix minor_matrix(size_t drop_row, size_t drop_col) const {
        LaurentMatrix m(rows_ - 1, cols_ - 1);
        for (size_t i = 0, mi = 0; i < rows_; ++i) {
            if (i == drop_row) continue;
            for (size_t j = 0, mj = 0; j < cols_; ++j) {
                if (j == drop_col) continue;
                m.at(mi, mj) = at(i, j);
                ++mj;
            }
            ++mi;
        }
        return m;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<LaurentPoly<S>> data_;
};

namespace detail {

template <typename S>
LaurentPoly<S> det_cofactor(const LaurentMatrix<S>& m) {
    const size_t n = m.rows();
    if (n == 0) return LaurentPoly<S>::one();
    if (n == 1) return m.at(0, 0);
    LaurentPoly<S> acc;
    bool neg = false;
    for (size_t j = 0; j < n; ++j, neg = !neg) {
        if (m.at(0, j).is_zero()) continue;
        LaurentPoly<S> sub = m.at(0, j) * det_cofactor(m.minor_matrix(0, j));
        acc += neg ? -sub : sub;
    }
    return acc;
}

// Fraction-free elimination. Laurent shifts are cleared row by row (each row
// multiplied by a monomial so its entries are polynomial in z, w); the
// accumulated monomial is divided back out of the result.
template <typename S>
LaurentPoly<S> det_bareiss(const LaurentMatrix<S>& m) {
    const size_t n = m.rows();
    std::vector<std::vector<LaurentPoly<S>>> a(n, std::vector<LaurentPoly<S>>(n));
    Vec2 shift{0, 0};
    for (size_t i = 0; i < n; ++i) {
        Vec2 row_min{0, 0};
        bool seen = false;
        for (size_t j = 0; j < n; ++j) {
            const auto& p = m.at(i, j);
            if (p.is_zero()) continue;
            Vec2 lo{p.min_dot({1, 0}), p.min_dot({0, 1})};
            if (!seen) { row_min = lo; seen = true; }
            else { row_min = {std::min(row_min.x, lo.x), std::min(row_min.y, lo.y)}; }
        }
        if (!seen) return LaurentPoly<S>::zero();
        for (size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j).shifted(-row_min);
        shift += row_min;
    }

    LaurentPoly<S> prev = LaurentPoly<S>::one();
    bool negate = false;
    for (size_t k = 0; k + 1 < n; ++k) {
        // Pivot: nonzero entry with fewest terms, to keep products small.
        size_t pivot = n;
        for (size_t i = k; i < n; ++i) {
            if (a[i][k].is_zero()) continue;
            if (pivot == n || a[i][k].term_count() < a[pivot][k].term_count()) pivot = i;
        }
        if (pivot == n) return LaurentPoly<S>::zero();
        if (pivot != k) { std::swap(a[pivot], a[k]); negate = !negate; }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                LaurentPoly<S> num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = divide_exact(num, prev);
            }
            a[i][k] = LaurentPoly<S>::zero();
        }
        prev = a[k][k];
    }
    LaurentPoly<S> d = a[n - 1][n - 1].shifted(shift);
    return negate ? -d : d;
}

}  // namespace detail

// Determinant: cofactor expansion for n <= 4, fraction-free elimination above.
template <typename S>
LaurentPoly<S> laurent_det(const LaurentMatrix<S>& m) {
    require(m.rows() == m.cols(), "ShapeMismatch", "determinant of a non-square matrix");
    if (m.rows() <= 4) return detail::det_cofactor(m);
    return detail::det_bareiss(m);
}

// Column j of the adjugate matrix adj(M), i.e. the vector v with
// M v = det(M) e_j. Entry i is the (j, i) cofactor of M.
template <typename S>
std::vector<LaurentPoly<S>> adjugate_column(const LaurentMatrix<S>& m, size_t j) {
    require(m.rows() == m.cols(), "ShapeMismatch", "adjugate of a non-square matrix");
    const size_t n = m.rows();
    require(j < n, "ShapeMismatch", "adjugate column index out of range");
    std::vector<LaurentPoly<S>> col(n);
    if (n == 1) {
        col[0] = LaurentPoly<S>::one();
        return col;
    }
    for (size_t i = 0; i < n; ++i) {
        LaurentPoly<S> mi = laurent_det(m.minor_matrix(j, i));
        col[i] = ((i + j) % 2 == 0) ? mi : -mi;
    }
    return col;
}

template <typename S>
std::vector<LaurentPoly<S>> mat_vec(const LaurentMatrix<S>& m,
                                    const std::vector<LaurentPoly<S>>& v) {
    require(m.cols() == v.size(), "ShapeMismatch", "matrix-vector size mismatch");
    std::vector<LaurentPoly<S>> r(m.rows());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

}  // namespace dimer
